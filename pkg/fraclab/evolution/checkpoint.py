"""Binary checkpoints of an EvolutionState (numpy .npz with a format tag)."""

import os
from typing import Tuple

import numpy as np

from fraclab.core.errors import CheckpointError
from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.evolution.state import EvolutionState
from fraclab.utils.xlogger import logger

FORMAT_TAG = "fraclab-ckpt-1"


def save_checkpoint(path: str, state: EvolutionState, alpha: float) -> str:
    grid = state.grid
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    g_coeffs = state.G.coeffs if state.G is not None else np.zeros(0, dtype=complex)
    with open(path, "wb") as f:
        np.savez(
            f,
            format=np.array(FORMAT_TAG),
            t=np.array(state.t),
            step=np.array(state.step),
            alpha=np.array(alpha),
            v_mean=np.array(state.v_mean),
            domain=np.array(grid.domain),
            period=np.array(grid.period),
            n_points=np.array(grid.n_points),
            u_coeffs=state.u.coeffs,
            G_coeffs=g_coeffs,
        )
    logger.debug(f"Checkpoint written: {path}", data={"t": state.t, "step": state.step}, category="evolve")
    return path


def load_checkpoint(path: str) -> Tuple[EvolutionState, float]:
    """
    Returns:
        (state, alpha)

    Raises:
        CheckpointError: missing file, unknown tag or missing fields
    """
    try:
        with np.load(path, allow_pickle=False) as data:
            tag = str(data["format"])
            if tag != FORMAT_TAG:
                raise CheckpointError(f"{path}: unknown checkpoint format {tag!r}")
            grid = Grid(domain=str(data["domain"]), period=float(data["period"]),
                        n_points=int(data["n_points"]))
            u = Field.from_coeffs(grid, data["u_coeffs"])
            g_coeffs = data["G_coeffs"]
            G = Field.from_coeffs(grid, g_coeffs) if g_coeffs.size else None
            state = EvolutionState(t=float(data["t"]), u=u, G=G, v_mean=float(data["v_mean"]),
                                   step=int(data["step"]))
            return state, float(data["alpha"])
    except CheckpointError:
        raise
    except (OSError, KeyError, ValueError) as e:
        raise CheckpointError(f"{path}: unreadable checkpoint ({e})") from e
