//! Successive altisets.
//!
//! Repeatedly removing the altiset of `R` peels the universe into upper
//! layers `V¹, V², …`; doing the same with `R⁻¹` yields the lower layers
//! `V₁, V₂, …`. Under the AA-property both peelings exhaust the universe in
//! the same number of steps `d(R)`, and that number equals the chromatic
//! number of `(A, trans(asym R))`.
//!
//! Indices are 1-based: `upper_index[x] = i` iff `x ∈ Vⁱ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::relation::{ElementSet, FiniteRelation};

/// Upper and lower significance indices of every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub upper_index: Vec<usize>,
    pub lower_index: Vec<usize>,
    /// `d(R)`, the number of upper (equivalently lower) classes.
    pub class_count: usize,
}

impl LayerDecomposition {
    /// `V¹, V², …` as element sets.
    pub fn upper_layers(&self) -> Vec<ElementSet> {
        level_sets(&self.upper_index, self.class_count)
    }

    /// `V₁, V₂, …` as element sets.
    pub fn lower_layers(&self) -> Vec<ElementSet> {
        level_sets(&self.lower_index, self.class_count)
    }
}

fn level_sets(index: &[usize], count: usize) -> Vec<ElementSet> {
    let mut out = vec![ElementSet::new(); count];
    for (x, &i) in index.iter().enumerate() {
        out[i - 1].insert(x);
    }
    out
}

/// Peels `R` by successive altisets, returning the 1-based layer of each element.
fn peel(rel: &FiniteRelation) -> Result<Vec<usize>> {
    let n = rel.size();
    let mut index = vec![0usize; n];
    let mut remaining = rel.universe().all();
    let mut step = 0;
    while !remaining.is_empty() {
        step += 1;
        if step > n + 1 {
            return Err(cyclic(rel));
        }
        let top = rel.altiset(Some(&remaining))?;
        if top.is_empty() {
            return Err(cyclic(rel));
        }
        for &x in &top {
            index[x] = step;
            remaining.remove(&x);
        }
    }
    Ok(index)
}

fn cyclic(rel: &FiniteRelation) -> Error {
    Error::Cyclic { cycle: rel.asym_cycle().unwrap_or_default() }
}

/// Upper and lower layers of a relation with the AA-property.
pub fn upper_layers(rel: &FiniteRelation) -> Result<LayerDecomposition> {
    if let Some(cycle) = rel.asym_cycle() {
        return Err(Error::Cyclic { cycle });
    }
    let upper_index = peel(rel)?;
    let lower_index = peel(&rel.inverse())?;
    let class_count = upper_index.iter().copied().max().unwrap_or(0);
    Ok(LayerDecomposition { upper_index, lower_index, class_count })
}

/// Remove-the-altiset operators: `υ` for `R`, `λ` for `R⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LayerOp {
    Upsilon,
    Lambda,
}

impl LayerOp {
    pub fn symbol(self) -> char {
        match self {
            LayerOp::Upsilon => 'υ',
            LayerOp::Lambda => 'λ',
        }
    }
}

/// `X ∖ V_X(R)` for `υ`, `X ∖ V_X(R⁻¹)` for `λ`.
pub fn apply_operator(op: LayerOp, rel: &FiniteRelation, set: &ElementSet) -> Result<ElementSet> {
    let top = match op {
        LayerOp::Upsilon => rel.altiset(Some(set))?,
        LayerOp::Lambda => rel.inverse().altiset(Some(set))?,
    };
    Ok(set.difference(&top).copied().collect())
}

/// A word over `{υ, λ}`, written left to right and applied right to left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainTerm(Vec<LayerOp>);

impl ChainTerm {
    pub fn new(ops: Vec<LayerOp>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::Argument("chain term must be nonempty".into()));
        }
        Ok(ChainTerm(ops))
    }

    pub fn ops(&self) -> &[LayerOp] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Operators in application order (rightmost first).
    pub fn application_order(&self) -> impl Iterator<Item = LayerOp> + '_ {
        self.0.iter().rev().copied()
    }
}

impl fmt::Display for ChainTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|op| write!(f, "{}", op.symbol()))
    }
}

/// Accepts `υ`/`u`/`U` and `λ`/`l`/`L`.
impl FromStr for ChainTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .chars()
            .map(|c| match c {
                'υ' | 'u' | 'U' => Ok(LayerOp::Upsilon),
                'λ' | 'l' | 'L' => Ok(LayerOp::Lambda),
                other => Err(Error::Argument(format!("unknown chain operator {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        ChainTerm::new(ops)
    }
}

/// Result of evaluating a chain term on the whole universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEvaluation {
    /// `X₁ = A, X₂, …, X_{n+1}`; the last entry is the value of the term.
    pub intermediates: Vec<ElementSet>,
}

impl ChainEvaluation {
    pub fn result(&self) -> &ElementSet {
        self.intermediates.last().expect("at least the starting set")
    }
}

pub fn eval_chain(term: &ChainTerm, rel: &FiniteRelation) -> Result<ChainEvaluation> {
    if let Some(cycle) = rel.asym_cycle() {
        return Err(Error::Cyclic { cycle });
    }
    let inverse = rel.inverse();
    let mut current = rel.universe().all();
    let mut intermediates = vec![current.clone()];
    for op in term.application_order() {
        let top = match op {
            LayerOp::Upsilon => rel.altiset(Some(&current))?,
            LayerOp::Lambda => inverse.altiset(Some(&current))?,
        };
        current = current.difference(&top).copied().collect();
        intermediates.push(current.clone());
    }
    Ok(ChainEvaluation { intermediates })
}

/// Colors each element by the 1-based step at which the chain removes it.
///
/// For a term of length `d(R)` this is a proper coloring of
/// `(A, trans(asym R))` with exactly `d(R)` colors.
pub fn chain_coloring(term: &ChainTerm, rel: &FiniteRelation) -> Result<Vec<usize>> {
    let layers = upper_layers(rel)?;
    if term.len() != layers.class_count {
        return Err(Error::Length { expected: layers.class_count, found: term.len() });
    }
    let eval = eval_chain(term, rel)?;
    let mut color = vec![0usize; rel.size()];
    for (step, pair) in eval.intermediates.windows(2).enumerate() {
        for &x in pair[0].difference(&pair[1]) {
            color[x] = step + 1;
        }
    }
    Ok(color)
}

pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Exact chromatic number of the underlying undirected graph (loops ignored).
///
/// Backtracking over vertices in descending degree order, starting from a
/// greedy clique lower bound. Refuses universes larger than `cap`.
pub fn chromatic_number_oracle(graph: &FiniteRelation, cap: usize) -> Result<usize> {
    let n = graph.size();
    if n > cap {
        return Err(Error::OracleSize { size: n, cap });
    }
    if n == 0 {
        return Ok(0);
    }
    let sym = graph.symmetrized();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| a != b && sym.contains(a, b)).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].iter().filter(|&&e| e).count()));

    let mut clique: Vec<usize> = Vec::new();
    for &v in &order {
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
        }
    }
    let mut k = clique.len().max(1);
    loop {
        let mut color = vec![usize::MAX; n];
        if colorable(&adj, &order, 0, k, 0, &mut color) {
            return Ok(k);
        }
        k += 1;
    }
}

fn colorable(
    adj: &[Vec<bool>],
    order: &[usize],
    pos: usize,
    k: usize,
    used: usize,
    color: &mut [usize],
) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    // colors beyond `used` are interchangeable, so only try the first fresh one
    for c in 0..k.min(used + 1) {
        if (0..adj.len()).any(|u| adj[v][u] && color[u] == c) {
            continue;
        }
        color[v] = c;
        if colorable(adj, order, pos + 1, k, used.max(c + 1), color) {
            return true;
        }
        color[v] = usize::MAX;
    }
    false
}

/// Number of vertices on a longest chain of a strict order.
pub fn longest_chain(order: &FiniteRelation) -> Result<usize> {
    if !order.is_irreflexive() {
        return Err(Error::NotStrictOrder { reason: "relation has a loop".into() });
    }
    if !order.is_asymmetric() {
        return Err(Error::NotStrictOrder { reason: "relation is not asymmetric".into() });
    }
    if !order.is_transitive() {
        return Err(Error::NotStrictOrder { reason: "relation is not transitive".into() });
    }
    let n = order.size();
    // Kahn's algorithm; a strict order is acyclic, so every vertex gets popped.
    let mut indegree = vec![0usize; n];
    for (_, b) in order.pairs() {
        indegree[b] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut best = vec![1usize; n];
    while let Some(v) = queue.pop() {
        for w in order.successors(v) {
            best[w] = best[w].max(best[v] + 1);
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push(w);
            }
        }
    }
    Ok(best.into_iter().max().unwrap_or(0))
}
