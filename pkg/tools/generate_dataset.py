#!/usr/bin/env python3
"""Generate the bundled sample dataset (data/students.csv).

The file is a synthetic 480-row LMS activity export in the canonical
17-column layout. Column marginals are fixed exactly (305/175 gender split,
245/235 semester split, class counts M=211 > H=142 > L=127, 14 nationalities,
14 birthplaces, 3 sections, 12 topics), while behavioral features are drawn
conditional on the class band so the dataset is learnable but noisy: a model
should reach roughly mid-seventies percent held-out accuracy, not memorize.

Deterministic: same seed, same file, byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from edumlp.dataset import CANONICAL_HEADER
from edumlp.rng import Xorshift64Star

SEED = 20240480

GENDER_COUNTS = {"M": 305, "F": 175}
SEMESTER_COUNTS = {"F": 245, "S": 235}
CLASS_COUNTS = {"M": 211, "H": 142, "L": 127}
SECTION_COUNTS = {"A": 283, "B": 167, "C": 30}
STAGE_COUNTS = {"lowerlevel": 199, "MiddleSchool": 248, "HighSchool": 33}
NATIONALITY_COUNTS = {
    "Kuwait": 179, "Jordan": 176, "Iraq": 22, "Lebanon": 17,
    "SaudiArabia": 14, "USA": 12, "Palestine": 11, "Egypt": 10,
    "Tunis": 9, "Libya": 8, "Syria": 7, "Iran": 6, "Morocco": 5,
    "Venezuela": 4,
}
BIRTHPLACE_COUNTS = {
    "Kuwait": 175, "Jordan": 180, "Iraq": 25, "Lebanon": 15,
    "USA": 14, "SaudiArabia": 13, "Egypt": 11, "Palestine": 10,
    "Libya": 9, "Tunis": 8, "Syria": 6, "Iran": 5, "Morocco": 5,
    "Venezuela": 4,
}
TOPIC_COUNTS = {
    "IT": 95, "French": 65, "Arabic": 59, "Science": 51, "English": 45,
    "Biology": 30, "Spanish": 25, "Chemistry": 24, "Geology": 24,
    "Quran": 22, "Math": 21, "History": 19,
}
GRADES_BY_STAGE = {
    "lowerlevel": ("G-02", "G-04"),
    "MiddleSchool": ("G-06", "G-07", "G-08"),
    "HighSchool": ("G-09", "G-10", "G-11", "G-12"),
}

# Behavior is driven by a latent engagement score on a 0-100 scale, drawn
# per class band with overlapping tails, so rows near a band boundary look
# genuinely ambiguous rather than mislabeled. (mean, std) per band:
APTITUDE_PARAMS = {"L": (19, 11), "M": (54, 12), "H": (86, 10)}
# numeric activity counts: count = gain * aptitude + offset + noise
COUNT_FROM_APTITUDE = {
    "raisedhands": (1.0, 0.0, 9.0),
    "VisITedResources": (1.05, 0.0, 8.0),
    "AnnouncementsView": (0.8, 0.0, 11.0),
    "Discussion": (0.7, 15.0, 14.0),
}
# binary columns: P(positive) = sigmoid((aptitude - center) / scale)
BINARY_FROM_APTITUDE = {
    "StudentAbsenceDays": ("Under-7", "Above-7", 40.0, 9.0),
    "ParentAnsweringSurvey": ("Yes", "No", 45.0, 14.0),
    "ParentschoolSatisfaction": ("Good", "Bad", 45.0, 18.0),
    "Relation": ("Mum", "Father", 50.0, 22.0),
}


def exact_counts_column(counts: dict[str, int], rng: Xorshift64Star) -> list[str]:
    values = [v for value, n in counts.items() for v in [value] * n]
    rng.shuffle(values)
    return values


def normal(rng: Xorshift64Star, mean: float, std: float) -> float:
    u1 = 1.0 - rng.random()
    u2 = rng.random()
    return mean + std * math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def sigmoid(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


def generate_rows(seed: int = SEED) -> list[list[str]]:
    rng = Xorshift64Star(seed)
    n = sum(CLASS_COUNTS.values())

    columns = {
        "gender": exact_counts_column(GENDER_COUNTS, rng),
        "Semester": exact_counts_column(SEMESTER_COUNTS, rng),
        "Class": exact_counts_column(CLASS_COUNTS, rng),
        "SectionID": exact_counts_column(SECTION_COUNTS, rng),
        "StageID": exact_counts_column(STAGE_COUNTS, rng),
        "NationalITy": exact_counts_column(NATIONALITY_COUNTS, rng),
        "PlaceofBirth": exact_counts_column(BIRTHPLACE_COUNTS, rng),
        "Topic": exact_counts_column(TOPIC_COUNTS, rng),
    }

    rows = []
    for i in range(n):
        klass = columns["Class"][i]
        mean, std = APTITUDE_PARAMS[klass]
        aptitude = normal(rng, mean, std)

        stage = columns["StageID"][i]
        grades = GRADES_BY_STAGE[stage]
        grade = grades[rng.next_uint64() % len(grades)]

        by_column = {
            "gender": columns["gender"][i],
            "NationalITy": columns["NationalITy"][i],
            "PlaceofBirth": columns["PlaceofBirth"][i],
            "StageID": stage,
            "GradeID": grade,
            "SectionID": columns["SectionID"][i],
            "Topic": columns["Topic"][i],
            "Semester": columns["Semester"][i],
            "Class": klass,
        }
        for column, (positive, negative, center, scale) in BINARY_FROM_APTITUDE.items():
            p = sigmoid((aptitude - center) / scale)
            by_column[column] = positive if rng.random() < p else negative
        for column, (gain, offset, noise) in COUNT_FROM_APTITUDE.items():
            value = round(normal(rng, gain * aptitude + offset, noise))
            by_column[column] = str(max(0, min(100, value)))
        rows.append([by_column[c] for c in CANONICAL_HEADER])
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "output",
        nargs="?",
        default=str(Path(__file__).resolve().parents[1] / "data" / "students.csv"),
    )
    parser.add_argument("--seed", type=int, default=SEED)
    args = parser.parse_args()

    rows = generate_rows(args.seed)
    out_path = Path(args.output)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CANONICAL_HEADER)
        writer.writerows(rows)
    print(f"wrote {out_path} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
