"""Gaussian states and the symplectic elements of the interferometer.

Walks through the covariance-matrix representation: the vacuum, a coherent
pump, two-mode squeezing, the tritter, and the probed channels, checking the
textbook structure as we go.
"""

import numpy as np

from pumpedsu11 import (apply_symplectic, check_symplectic, mode_mixing_channel,
                        number_mean, pumped_input_state, pumped_two_mode_squeezer,
                        purity, reduce_to_modes, squeezing_channel, tritter,
                        tritter_from_generator, vacuum_state)

np.set_printoptions(precision=4, suppress=True)

print("=== vacuum and coherent pump ===")
vac = vacuum_state(3)
print("vacuum covariance is the identity:", np.allclose(vac.sigma, np.eye(6)))

pump = pumped_input_state(nbar=4.0, pump_phase=0.0)
print("pump displacement d =", pump.d)
print("pump mean particle number:", number_mean(pump, modes=(0,)))

print("\n=== two-mode squeezing of the side modes ===")
squeezer = pumped_two_mode_squeezer(r=1.0, squeeze_phase=0.0)
squeezed = apply_symplectic(pump, squeezer)
side = reduce_to_modes(squeezed, (1, 2))
print("side-mode covariance (cosh 2r on the diagonal, sinh 2r off-diagonal):")
print(side.sigma)
print("side-mode particle number 2 sinh^2 r =", number_mean(side))
print("global state stays pure:", abs(purity(squeezed) - 1) < 1e-12)
print("single side mode alone is thermal: purity =", purity(reduce_to_modes(squeezed, (1,))),
      "= 1/cosh(2r) =", 1 / np.cosh(2.0))

print("\n=== the tritter mixes pump and side modes ===")
mixed = apply_symplectic(squeezed, tritter(theta=0.4, phase=0.0))
print("population before tritter (pump, sides):",
      number_mean(squeezed, modes=(0,)), number_mean(squeezed, modes=(1, 2)))
print("population after tritter  (pump, sides):",
      number_mean(mixed, modes=(0,)), number_mean(mixed, modes=(1, 2)))
print("total conserved:", np.isclose(number_mean(mixed), number_mean(squeezed)))
print("closed form equals the exponential of the coupling Hamiltonian:",
      np.max(np.abs(tritter(0.4).matrix - tritter_from_generator(0.4).matrix)) < 1e-10)

print("\n=== the probed channels ===")
for name, op in [("squeezing s=0.2", squeezing_channel(0.2, 0.3)),
                 ("mode mixing m=0.2", mode_mixing_channel(0.2, 0.3))]:
    print(f"{name}: symplectic = {check_symplectic(op)}")
probe = apply_symplectic(vacuum_state(2), squeezing_channel(0.2, 0.3))
print("squeezing channel populates the vacuum: <N> = 2 sinh^2 s =", number_mean(probe))
passive = apply_symplectic(probe, mode_mixing_channel(0.7, 1.1))
print("mode mixing leaves <N> unchanged:", np.isclose(number_mean(passive), number_mean(probe)))
