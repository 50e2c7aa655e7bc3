from localdrift import Slice, Subgroup

# Four reference subgroups with known coverage under the discrete grid.
REFERENCE_SUBGROUPS = [
    (Subgroup((Slice("elevel", 0, 3), Slice("zipcode", 6, 7), Slice("age", 29, 78))),
     0.0536),
    (Subgroup((Slice("car", 15, 19), Slice("salary", 39_000, 116_000), Slice("zipcode", 0, 8))),
     0.1045),
    (Subgroup((Slice("zipcode", 2, 5), Slice("salary", 30_000, 139_000), Slice("age", 22, 80),
               Slice("car", 1, 20))),
     0.2505),
    (Subgroup((Slice("elevel", 1, 4), Slice("age", 20, 78), Slice("salary", 21_000, 140_000),
               Slice("hyears", 1, 30))),
     0.501),
]


# A benchmark configuration small enough for unit tests.
SMALL = dict(sizes=[0.05, 0.5], runs_per_size=4, train_size=2000, batch_count=30,
             batch_size=200, drift_center=15, drift_width=10, seed=3,
             detectors={"DDM": [{"min_samples": 30}], "HDDM": [{}]})

# Lines recorded by the acceptance suite, echoed in the terminal summary so
# they show up even when output capture is on.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
