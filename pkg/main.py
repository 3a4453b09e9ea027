from lrmipt import CircuitConfig, HeffSpec, estimate_half_chain, renyi2_entropy, run_trajectory
from lrmipt.circuit import InitialState, trajectory_rng
from lrmipt.scaling import expected_crossings

# Step 1: one trajectory and its entropy read-out
config = CircuitConfig(L=32, alpha=2.0, p=0.1, depth=8, seed=7)
record = run_trajectory(config, InitialState.PRODUCT_ZERO, rng=trajectory_rng(7, 0))
state = record.final_state
print(f"after {record.steps_run} steps: S_L/2 = {state.subsystem_entropy(range(16))}")
print(f"{record.measurements} measurements, outcomes {record.outcome_counts}")

# Step 2: a small ensemble across the transition
for p in (0.05, 0.2, 0.4):
    summary = estimate_half_chain(config.model_copy(update={"p": p}), n=16).summary()
    print(f"p={p:.2f}  S_L/2 = {summary.value:.2f} +/- {summary.stderr:.2f}")

# Step 3: gates crossing the half-chain cut
for alpha in (1.0, 2.0, 3.0):
    print(f"alpha={alpha}  crossings per layer at L=256: {expected_crossings(256, alpha):.2f}")

# Step 4: effective-model entropy of half the chain
spec = HeffSpec(L=10, J=1.0, Gamma=1.0, alpha=2.0)
print("S2(A = 5 sites) =", renyi2_entropy(spec, range(5)))
