"""
Fixed measurement families used by the presets and the test fixtures.
"""
import numpy as np

from majbound.components import MeasurementBasis
from majbound.exceptions import OutOfRangeException


class PaperFamilyParams:
    """
    Parameters of the three-measurement qutrit family.

    Args:
        a (float): weight in [0, 1] of the first computational vector in M_3.
        phi (float): relative phase in radians, reduced to [0, 2 pi).
    """

    def __init__(self, a: float, phi: float = np.pi / 2):
        if not 0.0 <= a <= 1.0:
            raise OutOfRangeException(f"Parameter a should lie in [0, 1], not {a}!")

        self.a = float(a)
        self.phi = float(np.mod(phi, 2 * np.pi))

    def __repr__(self):
        return f"PaperFamilyParams(a={self.a}, phi={self.phi})"


class ScenarioFactory:
    """
    Builds lists of MeasurementBasis for the named scenarios.
    """

    @staticmethod
    def paper_three_measurements(params: PaperFamilyParams) -> list[MeasurementBasis]:
        """
        M_1 computational basis of C^3, M_2 rotating the first and third
        axes by 45 degrees, M_3 mixing the first two axes with weight a and
        phase phi.
        """
        r = 1 / np.sqrt(2)
        sqrt_a, sqrt_b = np.sqrt(params.a), np.sqrt(1.0 - params.a)
        phase = np.exp(1j * params.phi)

        first = MeasurementBasis.computational(3, 'M1')
        second = MeasurementBasis([[r, 0, -r],
                                   [0, 1, 0],
                                   [r, 0, r]], 'M2')
        third = MeasurementBasis([[sqrt_a, phase * sqrt_b, 0],
                                  [sqrt_b, -phase * sqrt_a, 0],
                                  [0, 0, 1]], 'M3')

        return [first, second, third]


    @staticmethod
    def paper_family_grid(a_values, phi: float = np.pi / 2) -> list[tuple[float, list[MeasurementBasis]]]:
        """
        (a, bases) for every a of the grid.
        """
        return [(float(a), ScenarioFactory.paper_three_measurements(PaperFamilyParams(a, phi)))
                for a in a_values]


    @staticmethod
    def mub_qubit(measurements: int = 3) -> list[MeasurementBasis]:
        """
        Computational, Hadamard and circular qubit bases (the first
        `measurements` of them).
        """
        if not 2 <= measurements <= 3:
            raise OutOfRangeException(f"mub_qubit provides 2 or 3 measurements, not {measurements}!")

        r = 1 / np.sqrt(2)
        bases = [MeasurementBasis.computational(2, 'Z'),
                 MeasurementBasis([[r, r], [r, -r]], 'X'),
                 MeasurementBasis([[r, 1j * r], [r, -1j * r]], 'Y')]

        return bases[:measurements]
