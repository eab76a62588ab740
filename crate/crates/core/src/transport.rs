//! Exact solver for the balanced transportation problem.
//!
//! The solver runs successive shortest augmenting paths with node potentials
//! on the complete bipartite supplier/consumer network. Every step uses dense
//! Dijkstra (O(V^2)), and ties are always broken toward the lowest index, so a
//! fixed instance always yields the same flow. When supplies and demands are
//! integers every augmentation moves an integral amount, so the returned flow
//! is integral.

use std::fmt;
use std::io::Write;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Supplies, demands and a dense `supplies x demands` cost matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TransportInstance<T> {
    supplies: Vec<T>,
    demands: Vec<T>,
    costs: Vec<T>,
}

impl<T: Scalar> TransportInstance<T> {
    /// Checks shape, finiteness, non-negativity and the supply/demand balance.
    pub fn new(supplies: Vec<T>, demands: Vec<T>, costs: Vec<Vec<T>>) -> Result<Self> {
        if costs.len() != supplies.len() || costs.iter().any(|row| row.len() != demands.len()) {
            return Err(Error::InvalidInstance(format!(
                "cost matrix must be {} x {}",
                supplies.len(),
                demands.len()
            )));
        }
        let bad = |v: &T| !v.is_finite() || *v < T::zero();
        if supplies.iter().chain(&demands).any(bad) {
            return Err(Error::InvalidInstance("weights must be finite and non-negative".into()));
        }
        if costs.iter().flatten().any(bad) {
            return Err(Error::InvalidInstance("costs must be finite and non-negative".into()));
        }
        let supply: T = supplies.iter().copied().sum();
        let demand: T = demands.iter().copied().sum();
        if (supply - demand).abs() > T::tolerance() {
            return Err(Error::Infeasible { supply: supply.as_f64(), demand: demand.as_f64() });
        }
        Ok(TransportInstance { supplies, demands, costs: costs.into_iter().flatten().collect() })
    }

    pub fn supplies(&self) -> &[T] {
        &self.supplies
    }

    pub fn demands(&self) -> &[T] {
        &self.demands
    }

    pub fn cost(&self, i: usize, j: usize) -> T {
        self.costs[i * self.demands.len() + j]
    }

    pub fn total_supply(&self) -> T {
        self.supplies.iter().copied().sum()
    }

    /// The same problem with suppliers and consumers exchanged.
    pub fn transposed(&self) -> Self {
        let (r, c) = (self.supplies.len(), self.demands.len());
        let mut costs = Vec::with_capacity(r * c);
        for j in 0..c {
            for i in 0..r {
                costs.push(self.cost(i, j));
            }
        }
        TransportInstance { supplies: self.demands.clone(), demands: self.supplies.clone(), costs }
    }

    /// Applies `f` to every cost entry.
    pub fn map_costs(&self, f: impl Fn(T) -> T) -> Result<Self> {
        let c = self.demands.len();
        let rows = (0..self.supplies.len())
            .map(|i| (0..c).map(|j| f(self.cost(i, j))).collect())
            .collect();
        Self::new(self.supplies.clone(), self.demands.clone(), rows)
    }

    /// Total cost `sum f_ij c_ij` of an arbitrary flow matrix of matching shape.
    pub fn objective(&self, flow: &Flow<T>) -> T {
        flow.values.iter().zip(&self.costs).map(|(&f, &c)| f * c).sum()
    }
}

/// A flow matrix together with its total cost.
#[derive(Clone, Debug, PartialEq)]
pub struct Flow<T> {
    rows: usize,
    cols: usize,
    values: Vec<T>,
    objective: T,
}

impl<T: Scalar> Flow<T> {
    /// Wraps a flow matrix; `objective` is not recomputed.
    pub fn from_rows(values: Vec<Vec<T>>, objective: T) -> Self {
        let rows = values.len();
        let cols = values.first().map_or(0, Vec::len);
        Flow { rows, cols, values: values.into_iter().flatten().collect(), objective }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.cols + j]
    }

    pub fn objective(&self) -> T {
        self.objective
    }

    pub fn as_rows(&self) -> Vec<Vec<T>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.values.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    /// True when every entry is within `tol` of an integer.
    pub fn is_integral(&self, tol: T) -> bool {
        self.values.iter().all(|v| (*v - v.round()).abs() <= tol)
    }

    /// Nonzero entries as `(row, col, amount)` in row-major order.
    pub fn support(&self) -> Vec<(usize, usize, T)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != T::zero())
            .map(|(k, &v)| (k / self.cols, k % self.cols, v))
            .collect()
    }

    /// CSV dump: `rows,cols,objective` header and values, then the matrix.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "rows,cols,objective")?;
        writeln!(out, "{},{},{}", self.rows, self.cols, self.objective)?;
        for row in self.as_rows() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// A violated transportation constraint, as reported by [`check_flow`].
#[derive(Clone, Debug, PartialEq)]
pub enum FlowViolation<T> {
    Shape { expected: (usize, usize), found: (usize, usize) },
    /// Negative entry; flow must go from suppliers to consumers.
    Negative { row: usize, col: usize, value: T },
    /// Row sum differs from the supply; residual is `supply - shipped`.
    Supply { row: usize, residual: T },
    /// Column sum differs from the demand; residual is `demand - received`.
    Demand { col: usize, residual: T },
    /// Stored objective differs from the recomputed one.
    Objective { stored: T, recomputed: T },
}

impl<T: fmt::Display> fmt::Display for FlowViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowViolation::Shape { expected, found } => {
                write!(f, "flow shape {found:?} does not match instance shape {expected:?}")
            }
            FlowViolation::Negative { row, col, value } => {
                write!(f, "non-negativity violated at ({row}, {col}): {value}")
            }
            FlowViolation::Supply { row, residual } => {
                write!(f, "supply constraint violated at row {row}: residual {residual}")
            }
            FlowViolation::Demand { col, residual } => {
                write!(f, "demand constraint violated at column {col}: residual {residual}")
            }
            FlowViolation::Objective { stored, recomputed } => {
                write!(f, "objective {stored} does not match recomputed cost {recomputed}")
            }
        }
    }
}

/// Lists every constraint `flow` violates for `inst`, at the scalar tolerance.
pub fn check_flow<T: Scalar>(inst: &TransportInstance<T>, flow: &Flow<T>) -> Vec<FlowViolation<T>> {
    let shape = (inst.supplies.len(), inst.demands.len());
    if (flow.rows, flow.cols) != shape && !(flow.values.is_empty() && shape.0 * shape.1 == 0) {
        return vec![FlowViolation::Shape { expected: shape, found: (flow.rows, flow.cols) }];
    }
    let tol = T::tolerance();
    let mut out = Vec::new();
    let (r, c) = shape;
    for i in 0..r {
        for j in 0..c {
            let v = flow.get(i, j);
            if v < -tol {
                out.push(FlowViolation::Negative { row: i, col: j, value: v });
            }
        }
    }
    for (i, &s) in inst.supplies.iter().enumerate() {
        let shipped: T = (0..c).map(|j| flow.get(i, j)).sum();
        if (s - shipped).abs() > tol {
            out.push(FlowViolation::Supply { row: i, residual: s - shipped });
        }
    }
    for (j, &d) in inst.demands.iter().enumerate() {
        let received: T = (0..r).map(|i| flow.get(i, j)).sum();
        if (d - received).abs() > tol {
            out.push(FlowViolation::Demand { col: j, residual: d - received });
        }
    }
    let recomputed = inst.objective(flow);
    if (recomputed - flow.objective).abs() > tol * (T::one() + recomputed.abs()) {
        out.push(FlowViolation::Objective { stored: flow.objective, recomputed });
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Node {
    Row(usize),
    Col(usize),
}

/// Returns a minimum-cost flow for `inst`.
pub fn solve_transport<T: Scalar>(inst: &TransportInstance<T>) -> Result<Flow<T>> {
    let (r, c) = (inst.supplies.len(), inst.demands.len());
    let tol = T::tolerance();
    if r == 0 || c == 0 {
        let total = inst.total_supply() + inst.demands.iter().copied().sum::<T>();
        if total > tol {
            return Err(Error::InvalidInstance("empty side with nonzero total weight".into()));
        }
        return Ok(Flow { rows: r, cols: c, values: vec![T::zero(); r * c], objective: T::zero() });
    }

    let cost = |i: usize, j: usize| inst.costs[i * c + j];
    let mut flow = vec![T::zero(); r * c];
    let mut excess = inst.supplies.clone();
    let mut deficit = inst.demands.clone();

    // Reduced cost of row -> col is cost + pot_row - pot_col, kept >= 0.
    let mut pot_row = vec![T::zero(); r];
    let mut pot_col: Vec<T> = (0..c)
        .map(|j| (0..r).map(|i| cost(i, j)).fold(T::infinity(), T::min))
        .collect();

    let inf = T::infinity();
    let mut dist_row = vec![inf; r];
    let mut dist_col = vec![inf; c];
    let mut done_row = vec![false; r];
    let mut done_col = vec![false; c];
    let mut pred_row: Vec<Option<usize>> = vec![None; r];
    let mut pred_col = vec![0usize; c];

    loop {
        if !excess.iter().any(|&e| e > tol) || !deficit.iter().any(|&d| d > tol) {
            break;
        }

        for i in 0..r {
            dist_row[i] = if excess[i] > tol { T::zero() } else { inf };
            done_row[i] = false;
            pred_row[i] = None;
        }
        dist_col.fill(inf);
        done_col.fill(false);

        let sink = loop {
            let mut best: Option<(T, Node)> = None;
            for i in 0..r {
                if !done_row[i] && dist_row[i] < best.map_or(inf, |b| b.0) {
                    best = Some((dist_row[i], Node::Row(i)));
                }
            }
            for j in 0..c {
                if !done_col[j] && dist_col[j] < best.map_or(inf, |b| b.0) {
                    best = Some((dist_col[j], Node::Col(j)));
                }
            }
            let Some((d, node)) = best else {
                return Err(Error::InvalidInstance("no augmenting path; instance is unbalanced".into()));
            };
            match node {
                Node::Row(i) => {
                    done_row[i] = true;
                    for j in 0..c {
                        if done_col[j] {
                            continue;
                        }
                        let rc = (cost(i, j) + pot_row[i] - pot_col[j]).max(T::zero());
                        if d + rc < dist_col[j] {
                            dist_col[j] = d + rc;
                            pred_col[j] = i;
                        }
                    }
                }
                Node::Col(j) => {
                    done_col[j] = true;
                    if deficit[j] > tol {
                        break j;
                    }
                    for i in 0..r {
                        if done_row[i] || flow[i * c + j] <= T::zero() {
                            continue;
                        }
                        let rc = (pot_col[j] - cost(i, j) - pot_row[i]).max(T::zero());
                        if d + rc < dist_row[i] {
                            dist_row[i] = d + rc;
                            pred_row[i] = Some(j);
                        }
                    }
                }
            }
        };

        let reach = dist_col[sink];
        for i in 0..r {
            pot_row[i] += dist_row[i].min(reach);
        }
        for j in 0..c {
            pot_col[j] += dist_col[j].min(reach);
        }

        // Walk the path back to its source row, collecting the bottleneck.
        let mut amount = deficit[sink];
        let mut j = sink;
        let source = loop {
            let i = pred_col[j];
            match pred_row[i] {
                Some(prev) => {
                    amount = amount.min(flow[i * c + prev]);
                    j = prev;
                }
                None => break i,
            }
        };
        amount = amount.min(excess[source]);

        let mut j = sink;
        loop {
            let i = pred_col[j];
            flow[i * c + j] += amount;
            match pred_row[i] {
                Some(prev) => {
                    flow[i * c + prev] -= amount;
                    j = prev;
                }
                None => break,
            }
        }
        excess[source] -= amount;
        deficit[sink] -= amount;
    }

    let objective = flow.iter().zip(&inst.costs).map(|(&f, &w)| f * w).sum();
    Ok(Flow { rows: r, cols: c, values: flow, objective })
}
