from pydantic import BaseModel, Field


class SummaryRow(BaseModel):
    algo: str
    metric: str
    mean: float | None
    std: float | None
    median: float | None
    n: int
    n_nonconverged: int = 0


class PValueRow(BaseModel):
    """One-tailed Welch comparison: small p supports "algo_a has the smaller metric"."""

    metric: str
    algo_a: str
    algo_b: str
    t: float | None = None
    dof: float | None = None
    p_value: float | None = None


class Summary(BaseModel):
    rows: list[SummaryRow] = Field(default_factory=list)
    p_values: list[PValueRow] = Field(default_factory=list)

    def row(self, algo: str, metric: str) -> SummaryRow:
        for row in self.rows:
            if row.algo == algo and row.metric == metric:
                return row
        raise KeyError(f"no summary row for algo={algo!r}, metric={metric!r}")

    def comparison(self, metric: str, algo_a: str, algo_b: str) -> PValueRow:
        for row in self.p_values:
            if (row.metric, row.algo_a, row.algo_b) == (metric, algo_a, algo_b):
                return row
        raise KeyError(f"no comparison of {algo_a!r} against {algo_b!r} on {metric!r}")
