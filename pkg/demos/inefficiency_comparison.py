"""Desk-scale comparison of turbo and staircase-LDPC decoding inefficiency.

Runs small Monte-Carlo campaigns at a few interleaver sizes and prints the
average inefficiency mu_av, the estimated recovery threshold and the gap
to capacity for each configuration.  Increase TRIALS for smoother numbers.
"""

from fractions import Fraction

from turbobec import (RscSpec, build_regular_staircase, make_pr_interleaver,
                      make_turbo_spec, run_campaign)

TRIALS = 200
BASE_SEED = 99

rsc = RscSpec(0o7, 0o5, 3)

print(f"{'code':<14}{'rate':<6}{'K':<7}{'mu_av':<9}{'p_th':<9}gap")
for rate in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
    for k in (256, 1024):
        turbo = make_turbo_spec(rsc, k, make_pr_interleaver(k, seed=7), rate=rate)
        ldpc = build_regular_staircase(k, rate, seed=5)
        for name, code in (("turbo-pr", turbo), ("ldpc-regular", ldpc)):
            stats = run_campaign(code, TRIALS, BASE_SEED)
            print(f"{name:<14}{str(rate):<6}{k:<7}"
                  f"{stats.mu_av:<9.4f}{stats.p_th_est:<9.4f}{stats.gap:.4f}")
