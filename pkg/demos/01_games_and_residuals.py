"""Build games, evaluate payoffs, and score equilibrium candidates.

Run with: python demos/01_games_and_residuals.py
"""

import numpy as np

from logitgraph import (
    Game,
    MixedProfile,
    deviation_payoffs,
    evaluate_mixed,
    km_decompose,
    km_recompose,
    logit_residual,
    nash_residual,
    parse_game,
)

# Matching pennies from its canonical file: payoff +1 on a match for player 0,
# -1 for player 1, and the reverse on a mismatch.
with open("demos/games/matching_pennies.json", "rb") as handle:
    pennies = parse_game(handle.read())

uniform = MixedProfile.uniform(pennies.form)
print("matching pennies, both uniform:")
print("  expected payoff to player 0:", evaluate_mixed(pennies, 0, uniform))
print("  deviation payoffs player 0:", deviation_payoffs(pennies, 0, uniform))
print("  nash residual:", nash_residual(pennies, uniform))
print("  logit residual at n=4:", logit_residual(pennies, uniform, 4.0))

# A non-equilibrium: both players commit to action 0. Player 1 gains 2 by
# switching, and the residual reports exactly that gain.
pure = MixedProfile((np.array([1.0, 0.0]), np.array([1.0, 0.0])))
print("both play action 0 -> nash residual:", nash_residual(pennies, pure))

# The payoff split: per-action means over opponents, plus a zero-mean part.
# For matching pennies every mean is zero, so the split returns the game itself.
rep = km_decompose(pennies)
print("mean payoffs (bar):", [b.tolist() for b in rep.bar_u])
rebuilt = km_recompose(rep)
print(
    "recompose(decompose(game)) max error:",
    max(float(np.abs(a - b).max()) for a, b in zip(rebuilt.payoffs, pennies.payoffs)),
)

# An asymmetric game shows a nontrivial split.
game = Game.from_payoff_tensors(
    [np.array([[3.0, 0.0], [1.0, 2.0]]), np.array([[2.0, 1.0], [0.0, 3.0]])]
)
rep = km_decompose(game)
print("asymmetric game mean payoffs:", [b.tolist() for b in rep.bar_u])
print("zero-mean part of player 0:", rep.tilde_u[0].tolist())
