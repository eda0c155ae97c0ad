"""Bracketing a structure's peak response with the two spectra.

The bundled 17-mode cantilever beam table gives each mode a coupling
weight gamma*phi. Spread onto the oscillator grid, these weights combine
the response columns into a predicted tip acceleration. Its peak sits
below the SRS-based estimate, which is a guaranteed upper bound. The
SSI-based estimate is usually below it too, but that lower side is not
guaranteed.
"""

import shockssi as S

beam = S.cantilever_beam()
print(f"{len(beam.mode_no)} modes, {beam.freq_hz.min():.1f} to {beam.freq_hz.max():.0f} Hz")

bank = S.OscillatorBank.log_spaced()
header = f"{'signal':<10}{'actual':>12}{'|actual|':>12}{'ssi est':>12}{'srs est':>12}  lower ok"
print(header)
for seed in range(3):
    record = S.pyroshock_like(seed=seed, label=f"pyro{seed}")
    matrix = S.build_response_matrix(record, bank)
    _, result, _ = S.analyse(matrix)
    b = S.predict_bounds(matrix, S.srs(matrix), result, beam)
    print(f"{b.label:<10}{b.actual_max:>12.4g}{b.abs_max:>12.4g}{b.ssi_bound:>12.4g}"
          f"{b.srs_bound:>12.4g}  {b.left_bound_ok}")
