"""Batch line census: sample many lines per strategy and tabulate reports.

Run:  python demos/line_census.py
"""

from collections import Counter

from godeaux_lines import PrimeField, classify_line, sample_line


def signature(report):
    return (
        len(report.torsion_points),
        len(report.hyperelliptic_roots),
        report.minor_gcd.degree,
        report.kernel_degrees,
    )


def main():
    F31 = PrimeField(31)
    plan = [("generic", 8), ("torsion", 3), ("two-torsion", 3), ("hyp", 5), ("two-hyp", 5)]
    print("strategy      #torsion  #hyp  gcd-deg  kernel degrees   count")
    print("-" * 66)
    for strategy, count in plan:
        tally = Counter()
        trials = 0
        for seed in range(count):
            line = sample_line(strategy, F31, seed=seed)
            trials += line.provenance["trials"]
            tally[signature(classify_line(line))] += 1
        for (ntor, nhyp, gdeg, degs), n in sorted(tally.items()):
            print(
                f"{strategy:<12}  {ntor:^8d}  {nhyp:^4d}  {gdeg:^7d}  "
                f"{str(degs):<15}  {n}"
            )
        print(f"{'':12}  (total search trials: {trials})")
    print("-" * 66)
    print("generic lines: no special loci, gcd 1, kernel degrees (1,1,1,1)")
    print("two-torsion lines: degenerate pencil, kernel degrees (0,0,0,0)")
    print("two-hyp lines: the rejection search prefers partners where one")
    print("  a-matrix row vanishes (degree-0 block); pass")
    print("  general_position=True to sample_line for general members")


if __name__ == "__main__":
    main()
