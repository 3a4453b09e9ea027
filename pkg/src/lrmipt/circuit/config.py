from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class MeasurementScheme(str, Enum):
    FIXED_COUNT = "fixed-count"
    BERNOULLI = "per-site-bernoulli"


class InitialState(str, Enum):
    PRODUCT_ZERO = "product-zero"
    SCRAMBLED_SINGLE_MIXED = "scrambled-single-mixed"
    MAXIMALLY_MIXED = "maximally-mixed"


class CircuitConfig(BaseModel):
    """
    Parameters of one long-range hybrid circuit trajectory.

    Conceptual model:
    - one time step is a unitary layer of ``gates_per_layer`` random two-qubit gates
      followed by a measurement layer at rate ``p``
    - ``depth`` is a multiple of ``L``: a run lasts ``depth * L`` time steps
    - gate distances follow ``P(r) ∝ r**-alpha`` for ``r`` in ``[1, L/2]``
    """

    model_config = ConfigDict(frozen=True)

    L: int = Field(ge=4)
    alpha: float = Field(ge=0.0, allow_inf_nan=False)
    p: float = Field(ge=0.0, le=1.0)
    depth: int = Field(default=32, ge=1)
    gates_per_layer: Optional[int] = Field(default=None, ge=1)
    measurement_scheme: MeasurementScheme = MeasurementScheme.FIXED_COUNT
    scramble_method: Literal["canonical", "brickwork"] = "canonical"
    seed: int = Field(default=0, ge=0, lt=2**64)
    debug: bool = False

    # ------------------------------------------------------------------
    # Derived quantities
    # ------------------------------------------------------------------

    @property
    def n_gates(self) -> int:
        """Gates per time step (``L/2`` unless overridden)."""
        return self.gates_per_layer if self.gates_per_layer is not None else self.L // 2

    @property
    def n_steps(self) -> int:
        return self.depth * self.L

    @property
    def n_measured(self) -> int:
        """Sites measured per layer under the fixed-count scheme, ``round(pL)`` with halves up."""
        return int(self.p * self.L + 0.5)
