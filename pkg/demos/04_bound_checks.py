"""Randomised check of the inequalities behind the dual spectra.

For non-negative weights x, three statements are checked on each draw:

* the rank-one trend misses N x by no more than sigma_2 * ||x||,
* max(N x) never exceeds srs . x,
* the column maxima of the rank-one fit reproduce ssi.

The fourth comparison, ssi . x <= max(N x), has no proof behind it. Its
failure rate under random weights is reported for information only.
"""

import shockssi as S

bank = S.OscillatorBank.log_spaced()
for label, record in [
    ("halfsine", S.gen_half_sine(50.0, 0.0005, 5e-6, pad=0.01)),
    ("pyro1", S.pyroshock_like(seed=1, duration=0.03)),
]:
    matrix = S.build_response_matrix(record, bank)
    decomp, result, _ = S.analyse(matrix)
    rep = S.check_bounds(matrix, decomp, S.srs(matrix).values, result, trials=500, seed=0)
    status = "all proved bounds hold" if rep.proved_ok else "PROVED BOUND FAILED"
    print(f"{label:<9} alpha={result.alpha:.3f}  {status}; "
          f"lower side violated in {rep.left_violation_rate:.1%} of draws")
