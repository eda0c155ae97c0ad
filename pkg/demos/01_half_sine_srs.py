"""Shock response spectrum of a classical half-sine pulse.

A 100 m/s^2, 2 ms half-sine is run through the default oscillator bank
(100 Hz to 25.6 kHz, six points per octave, Q = 10). The spectrum rises
with frequency, peaks near the pulse's own frequency scale, then settles
at the pulse amplitude where the oscillators simply follow the input.
"""

from pathlib import Path

import shockssi as S

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

pulse = S.gen_half_sine(100.0, 0.002, 5e-6, pad=0.02, label="halfsine_2ms")
bank = S.OscillatorBank.log_spaced()
matrix = S.build_response_matrix(pulse, bank)
spec = S.srs(matrix)

print(f"response matrix: {matrix.shape[0]} samples x {matrix.shape[1]} oscillators")
k = spec.values.argmax()
print(f"peak {spec.values[k]:.1f} m/s^2 at {spec.freqs[k]:.0f} Hz")
print(f"top of grid {spec.values[-1]:.1f} m/s^2 (input amplitude 100)")

S.write_srs_csv(spec, out / "halfsine_srs.csv")
S.write_srs_svg(spec, out / "halfsine_srs.svg")
S.export_src(matrix, out / "halfsine_src", floor=1.0, ceiling=300.0)
print(f"wrote spectrum and contour files to {out}")
