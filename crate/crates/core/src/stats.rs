use serde::Serialize;

/// Instrumented work counters for one solver run.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpStats {
    /// Public score-tree operations (add, path and subtree queries).
    pub score_ops: u64,
    /// Segment-tree nodes visited by those operations.
    pub score_steps: u64,
    /// Source nodes visited while building induced trees by sweeping.
    pub induce_steps: u64,
    /// Nodes and cross edges touched by the bipartite solver.
    pub solver_steps: u64,
    /// Number of bipartite problems built.
    pub problems: u64,
    /// Sum of bipartite problem sizes (`|t1| + |t2| + |cross|`).
    pub problem_size: u64,
    /// Deepest fragment recursion seen in any bipartite problem.
    pub max_depth: u64,
}

impl OpStats {
    /// Total elementary work: score-tree steps plus sweep and solver steps.
    pub fn total(&self) -> u64 {
        self.score_steps + self.induce_steps + self.solver_steps
    }

    pub fn merge(&mut self, other: &OpStats) {
        self.score_ops += other.score_ops;
        self.score_steps += other.score_steps;
        self.induce_steps += other.induce_steps;
        self.solver_steps += other.solver_steps;
        self.problems += other.problems;
        self.problem_size += other.problem_size;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}
