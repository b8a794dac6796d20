#!/usr/bin/env python3
"""Generate the synthetic FAOSTAT-style sample dataset at data/faostat_synthetic.csv.

The file mimics a FAOSTAT "Value of Agricultural Production" CSV export
(gross production value, constant 2004-2006 million US$): same columns, one
row per (Area, Item, Year). All values are synthetic; country/crop means are
ordered deterministically so the sample analyses have stable rankings.

Run from the repository root:  python3 scripts/make_fixture.py
"""

import csv
import math
import os
import random

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "faostat_synthetic.csv")

HEADER = [
    "Domain Code", "Domain", "Area Code", "Area", "Element Code", "Element",
    "Item Code", "Item", "Year Code", "Year", "Unit", "Value", "Flag",
    "Flag Description",
]

DOMAIN = ("QV", "Value of Agricultural Production")
ELEMENT = ("152", "Gross Production Value (constant 2004-2006 million US$)")
UNIT = "2004-2006 million US$"

AREA_CODES = {
    "France": 68, "Germany": 79, "Italy": 106, "United Kingdom": 229,
    "Spain": 203, "Poland": 173, "Romania": 183, "Ukraine": 230,
    "Hungary": 97, "Serbia": 272, "Bulgaria": 27, "Denmark": 54,
    "Greece": 84, "Czechia": 167, "Austria": 11, "Sweden": 210,
    "Portugal": 174, "Finland": 67,
}

ITEM_CODES = {
    "Wheat": 15, "Grapes": 560, "Olives": 260, "Tomatoes": 388,
    "Maize": 56, "Apples": 515, "Oranges": 490, "Kiwi fruit": 592,
    "Rice": 27,
}


def logistic(year, lo, hi, mid, width):
    return lo + (hi - lo) / (1.0 + math.exp(-(year - mid) / width))


def rows_for(rng, area, item, years, trend, noise):
    out = []
    for y in years:
        v = trend(y) * (1.0 + noise * rng.uniform(-1.0, 1.0))
        out.append((area, item, y, round(v, 2)))
    return out


def main():
    rng = random.Random(20200225)
    rows = []

    # Wheat producers. (target mean, years, trend shape)
    sixties = range(1961, 2017)  # 56 years
    wheat = [
        ("France", sixties, lambda y: logistic(y, 3200, 9200, 1985, 7.0), 0.09),
        ("Germany", sixties, lambda y: logistic(y, 2400, 7600, 1988, 8.0), 0.07),
        ("Italy", sixties, lambda y: 5600 - logistic(y, 0, 2400, 1988, 9.0), 0.06),
        ("United Kingdom", sixties, lambda y: logistic(y, 1900, 5200, 1984, 6.0), 0.08),
        ("Spain", sixties, lambda y: 2600 + 420 * math.sin((y - 1961) / 9.0), 0.11),
        ("Poland", sixties, lambda y: logistic(y, 1500, 3600, 1990, 10.0), 0.09),
        ("Romania", sixties, lambda y: 2300 + 260 * math.sin((y - 1961) / 7.0), 0.12),
        ("Ukraine", range(1992, 2017), lambda y: 2000 + 40 * (y - 1992), 0.13),
        ("Hungary", sixties, lambda y: logistic(y, 1150, 2300, 1980, 9.0), 0.10),
        ("Serbia", range(1987, 2017), lambda y: 1500 + 14 * (y - 1987), 0.11),
        ("Bulgaria", sixties, lambda y: 1400 + 170 * math.sin((y - 1961) / 8.0), 0.10),
        ("Denmark", sixties, lambda y: logistic(y, 700, 1750, 1982, 8.0), 0.07),
        ("Greece", sixties, lambda y: 1000 + 90 * math.sin((y - 1961) / 6.0), 0.09),
        ("Czechia", range(1993, 2017), lambda y: 900 + 9 * (y - 1993), 0.08),
        ("Austria", sixties, lambda y: logistic(y, 480, 940, 1985, 8.0), 0.06),
        ("Sweden", sixties, lambda y: 560 + 60 * math.sin((y - 1961) / 8.0), 0.08),
        ("Portugal", sixties, lambda y: 300 + 34 * math.sin((y - 1961) / 7.0), 0.12),
        ("Finland", sixties, lambda y: 240 + 22 * math.sin((y - 1961) / 9.0), 0.09),
    ]
    for area, years, trend, noise in wheat:
        rows += rows_for(rng, area, "Wheat", years, trend, noise)

    # Italian crops (wheat already present above).
    italy = [
        ("Grapes", sixties, lambda y: logistic(y, 4300, 6100, 1983, 9.0), 0.07),
        ("Olives", sixties, lambda y: 3200 + 330 * math.sin((y - 1961) / 5.0), 0.12),
        ("Tomatoes", sixties, lambda y: logistic(y, 2100, 3700, 1987, 8.0), 0.08),
        ("Maize", sixties, lambda y: logistic(y, 1300, 2350, 1981, 9.0), 0.09),
        ("Apples", sixties, lambda y: 1200 + 110 * math.sin((y - 1961) / 6.0), 0.08),
        ("Oranges", sixties, lambda y: 900 + 75 * math.sin((y - 1961) / 7.0), 0.09),
        ("Kiwi fruit", range(1985, 2017), lambda y: 180 + 11 * (y - 1985), 0.14),
        ("Rice", range(1990, 2017), lambda y: 260 + 3 * (y - 1990), 0.08),
    ]
    for item, years, trend, noise in italy:
        rows += rows_for(rng, "Italy", item, years, trend, noise)

    # Two gap years for Portugal reported with no value (flag M).
    missing = {("Portugal", "Wheat", 1961), ("Portugal", "Wheat", 1962)}

    # Sanity: rankings the sample analyses rely on must hold after noise.
    def mean_of(area, item):
        vs = [v for a, i, y, v in rows if a == area and i == item
              and (a, i, y) not in missing]
        return sum(vs) / len(vs)

    wheat_means = sorted(((mean_of(a, "Wheat"), a) for a, *_ in wheat), reverse=True)
    order = [a for _, a in wheat_means]
    assert order[:4] == ["France", "Germany", "Italy", "United Kingdom"], order
    italy_means = sorted(((mean_of("Italy", i), i) for i, *_ in italy), reverse=True)
    assert italy_means[0][1] == "Grapes", italy_means
    assert mean_of("Italy", "Grapes") > mean_of("Italy", "Wheat")

    flags = {0: ("", "Official data"), 1: ("F", "FAO estimate"), 2: ("Im", "Imputed value")}
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for n, (area, item, year, value) in enumerate(rows):
            if (area, item, year) in missing:
                flag, desc = "M", "Data not available"
                val = ""
            else:
                flag, desc = flags[0 if n % 7 else 1] if n % 13 else flags[2]
                val = f"{value:.2f}"
            w.writerow([
                DOMAIN[0], DOMAIN[1], AREA_CODES[area], area,
                ELEMENT[0], ELEMENT[1], ITEM_CODES[item], item,
                year, year, UNIT, val, flag, desc,
            ])
    print(f"wrote {OUT} ({len(rows)} data rows)")
    print("wheat producers by mean:", ", ".join(order))


if __name__ == "__main__":
    main()
