//! Integer max-flow machinery and the flow-based decomposition of counter
//! tables into single-parity words, used constructively to lift optima of
//! polytope U back to polytope Q weights.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::polytope::{LinearProgram, VarName};
use crate::ring::{mod_mul, CodeSpec};
use crate::solver::ExactSolution;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no feasible flow: {0}")]
    Infeasible(String),
    #[error("lift failed: {0}")]
    Lift(String),
}

// ---------------------------------------------------------------------------
// Flow networks
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct EdgeSpec {
    from: usize,
    to: usize,
    cap: u64,
    lower: u64,
}

/// Directed network with integer capacities and optional per-edge lower
/// bounds on the flow.
#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    num_vertices: usize,
    edges: Vec<EdgeSpec>,
}

impl FlowNetwork {
    pub fn new(num_vertices: usize) -> Self {
        FlowNetwork { num_vertices, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        self.add_edge_with_lower(from, to, 0, cap)
    }

    pub fn add_edge_with_lower(&mut self, from: usize, to: usize, lower: u64, cap: u64) -> usize {
        assert!(from < self.num_vertices && to < self.num_vertices);
        assert!(lower <= cap, "lower bound exceeds capacity");
        self.edges.push(EdgeSpec { from, to, cap, lower });
        self.edges.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Clone, Debug)]
pub struct MaxFlowResult {
    pub value: u64,
    /// Flow per edge, in insertion order.
    pub flows: Vec<u64>,
    /// Capacity of the cut induced by the residually reachable set.
    pub min_cut_value: u64,
    pub source_side: Vec<bool>,
}

/// Residual graph used by the augmenting-path search; arc `2e` is the
/// forward copy of edge `e` and `2e + 1` its reverse.
struct Residual {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual { adj: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, from: usize, to: usize, cap: u64) {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.adj[from].push(id);
        self.to.push(from);
        self.cap.push(0);
        self.adj[to].push(id + 1);
    }

    /// Breadth-first augmentation until no s-t path remains.
    fn edmonds_karp(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0u64;
        let n = self.adj.len();
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; n];
            let mut queue = VecDeque::new();
            queue.push_back(s);
            let mut seen = vec![false; n];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &arc in &self.adj[u] {
                    let v = self.to[arc];
                    if !seen[v] && self.cap[arc] > 0 {
                        seen[v] = true;
                        pred[v] = Some(arc);
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut bottleneck = u64::MAX;
            let mut v = t;
            while v != s {
                let arc = pred[v].unwrap();
                bottleneck = bottleneck.min(self.cap[arc]);
                v = self.to[arc ^ 1];
            }
            let mut v = t;
            while v != s {
                let arc = pred[v].unwrap();
                self.cap[arc] -= bottleneck;
                self.cap[arc ^ 1] += bottleneck;
                v = self.to[arc ^ 1];
            }
            total += bottleneck;
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &arc in &self.adj[u] {
                let v = self.to[arc];
                if !seen[v] && self.cap[arc] > 0 {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Maximum integral s-t flow (augmenting-path method); lower bounds must be
/// zero here. The returned value equals the capacity of the residual cut.
pub fn max_flow(net: &FlowNetwork, s: usize, t: usize) -> MaxFlowResult {
    assert!(net.edges.iter().all(|e| e.lower == 0), "use max_flow_with_lower_bounds");
    let mut res = Residual::new(net.num_vertices);
    for e in &net.edges {
        res.add(e.from, e.to, e.cap);
    }
    let value = res.edmonds_karp(s, t);
    let source_side = res.reachable(s);
    let mut min_cut_value = 0u64;
    for e in &net.edges {
        if source_side[e.from] && !source_side[e.to] {
            min_cut_value += e.cap;
        }
    }
    let flows = net
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| e.cap - res.cap[2 * i])
        .collect();
    MaxFlowResult { value, flows, min_cut_value, source_side }
}

/// Maximum s-t flow honoring per-edge lower bounds, via the standard
/// circulation transformation followed by residual augmentation.
pub fn max_flow_with_lower_bounds(
    net: &FlowNetwork,
    s: usize,
    t: usize,
) -> Result<MaxFlowResult, FlowError> {
    let n = net.num_vertices;
    let super_s = n;
    let super_t = n + 1;
    let mut res = Residual::new(n + 2);
    for e in &net.edges {
        res.add(e.from, e.to, e.cap - e.lower);
    }
    let mut excess = vec![0i64; n];
    for e in &net.edges {
        excess[e.to] += e.lower as i64;
        excess[e.from] -= e.lower as i64;
    }
    let ts_arc = res.to.len();
    res.add(t, s, u64::MAX / 4);
    let mut demand = 0u64;
    for (v, &ex) in excess.iter().enumerate() {
        if ex > 0 {
            res.add(super_s, v, ex as u64);
            demand += ex as u64;
        } else if ex < 0 {
            res.add(v, super_t, (-ex) as u64);
        }
    }
    let pushed = res.edmonds_karp(super_s, super_t);
    if pushed != demand {
        return Err(FlowError::Infeasible(format!(
            "lower bounds demand {} but only {} routable",
            demand, pushed
        )));
    }
    // freeze the circulation arc, then maximize s -> t on the residual
    let base = (u64::MAX / 4) - res.cap[ts_arc];
    res.cap[ts_arc] = 0;
    res.cap[ts_arc ^ 1] = 0;
    let extra = res.edmonds_karp(s, t);
    let flows: Vec<u64> = net
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| e.lower + (e.cap - e.lower - res.cap[2 * i]))
        .collect();
    let source_side = res.reachable(s)[..n].to_vec();
    Ok(MaxFlowResult { value: base + extra, flows, min_cut_value: base + extra, source_side })
}

// ---------------------------------------------------------------------------
// Decomposition of counter tables
// ---------------------------------------------------------------------------

/// Weights over plain single-parity words with a fixed composition `k`:
/// one word is extracted per level via a saturating flow, critical positions
/// forced through edge lower bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub weights: BTreeMap<Vec<u32>, u64>,
    /// The extracted word of every round, in extraction order.
    pub rounds: Vec<Vec<u32>>,
}

/// Decomposes nonnegative counters `x[i][alpha-1]` with column sums
/// `k_alpha * M` and row sums at most `M` into `M` words over ℤ_q whose
/// entries sum to zero and whose composition is `k`.
pub fn decompose(
    q: u32,
    x: &[Vec<u64>],
    k: &[u64],
    m_level: u64,
) -> Result<Decomposition, FlowError> {
    let nq = q as usize - 1;
    let n = x.len();
    if k.len() != nq || x.iter().any(|xi| xi.len() != nq) {
        return Err(FlowError::Precondition("counter table shape mismatch".into()));
    }
    for (a, &ka) in k.iter().enumerate() {
        let col: u64 = x.iter().map(|xi| xi[a]).sum();
        if col != ka * m_level {
            return Err(FlowError::Precondition(format!(
                "column sum for value {} is {}, expected {}",
                a + 1,
                col,
                ka * m_level
            )));
        }
    }
    for (i, xi) in x.iter().enumerate() {
        if xi.iter().sum::<u64>() > m_level {
            return Err(FlowError::Precondition(format!("row sum at position {} exceeds M", i)));
        }
    }
    let ring_sum: u64 = k.iter().enumerate().map(|(a, &ka)| (a as u64 + 1) * ka).sum();
    if ring_sum % u64::from(q) != 0 {
        return Err(FlowError::Precondition("composition does not sum to zero in the ring".into()));
    }

    let mut x = x.to_vec();
    let mut m_rem = m_level;
    let mut weights: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut rounds = Vec::new();
    let sum_k: u64 = k.iter().sum();
    while m_rem > 0 {
        if sum_k == 0 {
            let zero = vec![0u32; n];
            *weights.entry(zero.clone()).or_insert(0) += m_rem;
            for _ in 0..m_rem {
                rounds.push(zero.clone());
            }
            break;
        }
        // network: s, t, one vertex per nonzero value, one per position
        let s = 0usize;
        let t = 1usize;
        let vnode = |a: usize| 2 + a;
        let inode = |i: usize| 2 + nq + i;
        let mut net = FlowNetwork::new(2 + nq + n);
        for (a, &ka) in k.iter().enumerate() {
            if ka > 0 {
                net.add_edge(s, vnode(a), ka);
            }
        }
        let mut assign_edges = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            for (a, &cnt) in xi.iter().enumerate() {
                if cnt > 0 {
                    // capacity stands in for an unbounded edge
                    let e = net.add_edge(vnode(a), inode(i), sum_k + 1);
                    assign_edges.push((i, a, e));
                }
            }
        }
        for (i, xi) in x.iter().enumerate() {
            let critical = xi.iter().sum::<u64>() == m_rem;
            net.add_edge_with_lower(inode(i), t, u64::from(critical), 1);
        }
        let result = max_flow_with_lower_bounds(&net, s, t)?;
        if result.value != sum_k {
            return Err(FlowError::Infeasible(format!(
                "round flow {} below composition size {}",
                result.value, sum_k
            )));
        }
        let mut word = vec![0u32; n];
        for &(i, a, e) in &assign_edges {
            if result.flows[e] == 1 {
                word[i] = a as u32 + 1;
            }
        }
        for (i, &v) in word.iter().enumerate() {
            if v != 0 {
                x[i][v as usize - 1] -= 1;
            }
        }
        m_rem -= 1;
        *weights.entry(word.clone()).or_insert(0) += 1;
        rounds.push(word);
    }
    Ok(Decomposition { weights, rounds })
}

// ---------------------------------------------------------------------------
// Lifting polytope-U optima to polytope-Q weights
// ---------------------------------------------------------------------------

/// Exact-rational point of polytope Q produced by the lift: the indicator
/// block and per-check local-codeword weights.
#[derive(Clone, Debug)]
pub struct QWitness {
    pub f: Vec<BigRational>,
    pub w: Vec<BTreeMap<Vec<u32>, BigRational>>,
}

impl QWitness {
    /// Exact feasibility in polytope Q: weights normalize per check and
    /// reproduce the indicator marginals.
    pub fn check_feasible(&self, code: &CodeSpec) -> Result<(), FlowError> {
        let q = code.q();
        for (j, wj) in self.w.iter().enumerate() {
            let mut total = BigRational::zero();
            for (b, wv) in wj {
                if wv.is_negative() {
                    return Err(FlowError::Lift(format!("negative weight at check {}", j)));
                }
                let mut full = vec![0u32; code.n()];
                for (pos, &i) in code.support(j).iter().enumerate() {
                    full[i] = b[pos];
                }
                if !code.check_satisfied(&full, j) {
                    return Err(FlowError::Lift(format!("weight on non-codeword at check {}", j)));
                }
                total += wv;
            }
            if !total.is_one() {
                return Err(FlowError::Lift(format!("weights at check {} sum to {}", j, total)));
            }
            for (pos, &i) in code.support(j).iter().enumerate() {
                for alpha in 1..q {
                    let marg: BigRational = wj
                        .iter()
                        .filter(|(b, _)| b[pos] == alpha)
                        .map(|(_, w)| w.clone())
                        .sum();
                    let fv = &self.f[i * (q as usize - 1) + alpha as usize - 1];
                    if &marg != fv {
                        return Err(FlowError::Lift(format!(
                            "marginal mismatch at (j={}, i={}, alpha={})",
                            j, i, alpha
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objective(&self, costs: &[f64], q: u32) -> BigRational {
        let mut total = BigRational::zero();
        for (slot, fv) in self.f.iter().enumerate() {
            if !fv.is_zero() {
                let c = BigRational::from_float(costs[slot]).expect("finite cost");
                total += fv * c;
            }
        }
        let _ = q;
        total
    }
}

/// Rebuilds polytope-Q weights from an exact vertex of polytope U: per check
/// and composition the scaled contribution counters are decomposed into
/// plain words, which are then split into local codewords by walking the
/// preimage values in ascending order.
pub fn lift_u_to_q(
    code: &CodeSpec,
    u_lp: &LinearProgram,
    exact: &ExactSolution,
) -> Result<QWitness, FlowError> {
    let q = code.q();
    let n = code.n();
    let nq = q as usize - 1;
    let mut f = vec![BigRational::zero(); n * nq];
    // per check: composition -> (sigma, z[(i, beta)] -> value)
    let mut blocks: Vec<BTreeMap<Vec<u32>, (BigRational, BTreeMap<(usize, u32), BigRational>)>> =
        vec![BTreeMap::new(); code.m()];
    for (col, name) in u_lp.registry().names().iter().enumerate() {
        let v = &exact.x[col];
        match name {
            VarName::F { i, alpha } => {
                f[i * nq + *alpha as usize - 1] = v.clone();
            }
            VarName::Sigma { j, comp } => {
                blocks[*j].entry(comp.clone()).or_default().0 = v.clone();
            }
            VarName::ZU { j, i, comp, beta } => {
                if !v.is_zero() {
                    blocks[*j]
                        .entry(comp.clone())
                        .or_default()
                        .1
                        .insert((*i, *beta), v.clone());
                }
            }
            _ => {
                return Err(FlowError::Lift("program is not a polytope-U relaxation".into()))
            }
        }
    }

    let mut w: Vec<BTreeMap<Vec<u32>, BigRational>> = vec![BTreeMap::new(); code.m()];
    for j in 0..code.m() {
        let support = code.support(j).to_vec();
        for (comp, (sigma, z)) in &blocks[j] {
            if sigma.is_zero() {
                continue;
            }
            // mu clears every z / sigma denominator
            let mut mu = BigInt::one();
            for zv in z.values() {
                let ratio = zv / sigma;
                mu = mu.lcm(ratio.denom());
            }
            let mu_rat = BigRational::from_integer(mu.clone());
            let count_of = |i: usize, beta: u32| -> Result<u64, FlowError> {
                match z.get(&(i, beta)) {
                    None => Ok(0),
                    Some(zv) => {
                        let scaled = zv / sigma * &mu_rat;
                        if !scaled.is_integer() {
                            return Err(FlowError::Lift("mu failed to clear a denominator".into()));
                        }
                        scaled
                            .to_integer()
                            .to_u64()
                            .ok_or_else(|| FlowError::Lift("scaled count exceeds u64".into()))
                    }
                }
            };
            let mu_u64 = mu
                .to_u64()
                .ok_or_else(|| FlowError::Lift("common denominator exceeds u64".into()))?;
            // x[pos][alpha-1]: words assigned value alpha at this position
            let mut x = vec![vec![0u64; nq]; support.len()];
            for (pos, &i) in support.iter().enumerate() {
                let h = code.row(j)[i];
                for beta in 1..q {
                    let alpha = mod_mul(beta, h, q);
                    if alpha != 0 {
                        x[pos][alpha as usize - 1] += count_of(i, beta)?;
                    }
                }
            }
            let k: Vec<u64> = comp.iter().map(|&v| u64::from(v)).collect();
            let dec = decompose(q, &x, &k, mu_u64)?;

            // split each plain word into local codewords: at every position
            // walk the preimage values in ascending order
            let mut schedules: Vec<BTreeMap<u32, Vec<(u32, u64)>>> = Vec::new();
            for (pos, &i) in support.iter().enumerate() {
                let h = code.row(j)[i];
                let mut per_alpha: BTreeMap<u32, Vec<(u32, u64)>> = BTreeMap::new();
                for beta in 1..q {
                    let alpha = mod_mul(beta, h, q);
                    let cnt = count_of(i, beta)?;
                    if cnt > 0 {
                        per_alpha.entry(alpha).or_default().push((beta, cnt));
                    }
                }
                // zero-product positions absorb the remaining words with b = 0
                let assigned_nonzero: u64 = x[pos].iter().sum();
                let zero_words = mu_u64 - assigned_nonzero;
                let zero_betas: u64 = per_alpha.get(&0).map_or(0, |v| v.iter().map(|&(_, c)| c).sum());
                if zero_betas > zero_words {
                    return Err(FlowError::Lift(format!(
                        "zero-product mass exceeds available words at check {} position {}",
                        j, pos
                    )));
                }
                per_alpha.entry(0).or_default().push((0, zero_words - zero_betas));
                schedules.push(per_alpha);
            }
            let mut cursors: Vec<BTreeMap<u32, u64>> = vec![BTreeMap::new(); support.len()];
            let sigma_over_mu = sigma / &mu_rat;
            for (a, &wa) in &dec.weights {
                for _ in 0..wa {
                    let mut b = vec![0u32; support.len()];
                    for pos in 0..support.len() {
                        let alpha = a[pos];
                        let cursor = cursors[pos].entry(alpha).or_insert(0);
                        let schedule = schedules[pos].get(&alpha).ok_or_else(|| {
                            FlowError::Lift("word value without preimage schedule".into())
                        })?;
                        let mut acc = 0u64;
                        let mut chosen = None;
                        for &(beta, cnt) in schedule {
                            acc += cnt;
                            if *cursor < acc {
                                chosen = Some(beta);
                                break;
                            }
                        }
                        let beta = chosen.ok_or_else(|| {
                            FlowError::Lift("preimage schedule exhausted".into())
                        })?;
                        *cursor += 1;
                        b[pos] = beta;
                    }
                    *w[j].entry(b).or_insert_with(BigRational::zero) += &sigma_over_mu;
                }
            }
        }
    }
    Ok(QWitness { f, w })
}
