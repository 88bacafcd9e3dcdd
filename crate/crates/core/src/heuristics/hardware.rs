use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::ordering::{CommutationDag, OrderingMode};
use crate::pauli::{CliffordGate, Pauli, PauliString, PauliWord};

use super::{implement, require_weight, HeuristicOutcome, LocalClifford, ReductionHeuristic};

/// Coupling graph with all-pairs hop distances.
#[derive(Clone, Debug, PartialEq)]
pub struct HardwareContext {
    n: usize,
    edges: Vec<(usize, usize)>,
    dist: Vec<Vec<usize>>,
}

/// BFS hop distances. Fails on a disconnected graph, naming its components.
pub fn all_pairs_distance(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::QubitIndex { index: a.max(b), n });
        }
        if a == b {
            return Err(Error::Input(format!("self-loop on qubit {a}")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![vec![usize::MAX; n]; n];
    for (src, row) in dist.iter_mut().enumerate() {
        row[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == usize::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    if n > 0 && dist[0].contains(&usize::MAX) {
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let comp: Vec<usize> = (0..n).filter(|&v| dist[s][v] != usize::MAX).collect();
            for &v in &comp {
                seen[v] = true;
            }
            components.push(comp);
        }
        return Err(Error::Disconnected(components));
    }
    Ok(dist)
}

impl HardwareContext {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let dist = all_pairs_distance(n, edges)?;
        let mut uniq: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        uniq.sort_unstable();
        uniq.dedup();
        Ok(HardwareContext { n, edges: uniq, dist })
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|q| (q - 1, q)).collect();
        HardwareContext::new(n, &edges).expect("path graph is connected")
    }

    pub fn ring(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|q| (q - 1, q)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        HardwareContext::new(n, &edges).expect("ring graph is connected")
    }

    /// Row-major `rows x cols` grid.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let q = r * cols + c;
                if c + 1 < cols {
                    edges.push((q, q + 1));
                }
                if r + 1 < rows {
                    edges.push((q, q + cols));
                }
            }
        }
        HardwareContext::new(rows * cols, &edges).expect("grid graph is connected")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        HardwareContext::new(n, &edges).expect("complete graph is connected")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Undirected edges with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.dist[a][b]
    }

    pub fn distances(&self) -> &[Vec<usize>] {
        &self.dist
    }

    pub fn is_coupled(&self, a: usize, b: usize) -> bool {
        self.dist[a][b] == 1
    }

    /// Coupled qubits of `a`, ascending.
    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&b| self.dist[a][b] == 1)
    }
}

/// `O[k][q] = x[k][q] | z[k][q]`.
pub fn occupancy(word: &PauliWord) -> Vec<Vec<bool>> {
    word.rows()
        .iter()
        .map(|r| (0..word.num_qubits()).map(|q| r.x(q) || r.z(q)).collect())
        .collect()
}

fn row_dist(row: &PauliString, ctx: &HardwareContext) -> usize {
    let support = row.support();
    let mut total = 0;
    for &p in &support {
        for &q in &support {
            total += ctx.dist[p][q];
        }
    }
    total
}

/// Row `k` of `(O x D) .* O`, summed: total pairwise distance between the
/// occupied qubits of row `k`, each unordered pair counted twice.
pub fn dist_metric(word: &PauliWord, k: usize, ctx: &HardwareContext) -> usize {
    row_dist(word.row(k), ctx)
}

/// One coupled-pair Clifford block considered by the hardware heuristic.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub gates: Vec<CliffordGate>,
    /// The target row after conjugation.
    pub target_after: PauliString,
    pub weight_after: usize,
    pub dist_after: usize,
}

/// Blocks `(Q_c, Q_t, CX(c, t))` on coupled pairs touching the target's
/// support that change which qubits the target occupies. Candidates that
/// free one of the farthest qubits, or lower the distance metric, are
/// preferred; if there are none, every support-changing block is returned.
pub fn gen_ops(word: &PauliWord, pos: usize, ctx: &HardwareContext) -> Vec<Candidate> {
    let target = word.row(pos);
    let support = target.support();
    let dist_before = row_dist(target, ctx);
    let farthest = {
        let sums: Vec<usize> = support
            .iter()
            .map(|&q| support.iter().map(|&p| ctx.dist[q][p]).sum())
            .collect();
        let max = sums.iter().copied().max().unwrap_or(0);
        support
            .iter()
            .zip(&sums)
            .filter(|(_, &s)| s == max)
            .map(|(&q, _)| q)
            .collect::<Vec<_>>()
    };

    let mut all = Vec::new();
    for &(a, b) in &ctx.edges {
        let (oa, ob) = (target.letter(a).is_identity(), target.letter(b).is_identity());
        if oa && ob {
            continue;
        }
        for (c, t) in [(a, b), (b, a)] {
            for qc in LocalClifford::ALL {
                for qt in LocalClifford::ALL {
                    let gates: Vec<CliffordGate> = qc
                        .gate(c)
                        .into_iter()
                        .chain(qt.gate(t))
                        .chain(std::iter::once(CliffordGate::CX(c, t)))
                        .collect();
                    let mut after = target.clone();
                    for &g in &gates {
                        after.conjugate(g);
                    }
                    let moved = [c, t]
                        .iter()
                        .any(|&q| after.letter(q).is_identity() != target.letter(q).is_identity());
                    if !moved {
                        continue;
                    }
                    all.push(Candidate {
                        weight_after: after.weight(),
                        dist_after: row_dist(&after, ctx),
                        target_after: after,
                        gates,
                    });
                }
            }
        }
    }
    let preferred: Vec<Candidate> = all
        .iter()
        .filter(|c| {
            c.dist_after < dist_before
                || farthest.iter().any(|&f| c.target_after.letter(f).is_identity())
        })
        .cloned()
        .collect();
    if preferred.is_empty() {
        all
    } else {
        preferred
    }
}

/// Distance-driven heuristic restricted to coupled qubit pairs, with loop
/// detection and a one-step greedy fallback.
#[derive(Clone, Copy, Debug)]
pub struct HardwareAware<'a> {
    ctx: &'a HardwareContext,
}

impl<'a> HardwareAware<'a> {
    pub fn new(ctx: &'a HardwareContext) -> Self {
        HardwareAware { ctx }
    }

    fn apply(word: &PauliWord, gates: &[CliffordGate]) -> PauliWord {
        let mut w = word.clone();
        for &g in gates {
            w.conjugate(g);
        }
        w
    }
}

impl HardwareAware<'_> {
    /// One fallback step that shrinks the target towards `root`: clear an
    /// occupied qubit next to another occupied qubit on its shortest path to
    /// the root (one CX), or else hop the letter farthest from the root one
    /// edge closer (two CXs). Either way `sum_q d(q, root)` over the support
    /// strictly decreases.
    fn collapse_step(&self, word: &PauliWord, pos: usize, root: usize) -> Vec<CliffordGate> {
        let ctx = self.ctx;
        let target = word.row(pos);
        let support = target.support();
        let toward = |a: usize| {
            ctx.neighbors(a)
                .find(|&b| ctx.dist[b][root] + 1 == ctx.dist[a][root])
                .expect("connected graph has a shortest-path neighbour")
        };
        let movable = support.iter().copied().filter(|&a| a != root);
        let merge = movable
            .clone()
            .filter(|&a| !target.letter(toward(a)).is_identity())
            .max_by_key(|&a| (ctx.dist[a][root], std::cmp::Reverse(a)));
        let (a, hop) = match merge {
            Some(a) => (a, false),
            None => {
                let a = movable
                    .max_by_key(|&a| (ctx.dist[a][root], std::cmp::Reverse(a)))
                    .expect("weight > 1 leaves a non-root qubit");
                (a, true)
            }
        };
        let b = toward(a);
        let to_x = |q: usize, letter: Pauli| match letter {
            Pauli::Z => Some(CliffordGate::H(q)),
            Pauli::Y => Some(CliffordGate::S(q)),
            _ => None,
        };
        let mut gates: Vec<CliffordGate> = to_x(a, target.letter(a)).into_iter().collect();
        if hop {
            // X_a -> X_a X_b -> X_b
            gates.push(CliffordGate::CX(a, b));
        } else {
            gates.extend(to_x(b, target.letter(b)));
        }
        gates.push(CliffordGate::CX(b, a));
        gates
    }
}

impl ReductionHeuristic for HardwareAware<'_> {
    fn name(&self) -> &str {
        "hardware"
    }

    fn reduce(&self, word: &mut PauliWord, pos: usize, gates: &mut Vec<CliffordGate>) -> Result<()> {
        let ctx = self.ctx;
        if ctx.n != word.num_qubits() {
            return Err(Error::Dimension {
                expected: ctx.n,
                found: word.num_qubits(),
            });
        }
        let weight0 = word.row(pos).weight();
        if weight0 <= 1 {
            return Ok(());
        }
        let support = word.row(pos).support();
        if support
            .iter()
            .any(|&p| support.iter().any(|&q| ctx.dist[p][q] == usize::MAX))
        {
            return Err(Error::Heuristic(format!(
                "occupied qubits {support:?} are not mutually reachable"
            )));
        }
        let cap = 64 * ctx.n * weight0;
        let patience = 4 * ctx.n;

        let mut current = word.clone();
        let mut reduction: Vec<Vec<CliffordGate>> = Vec::new();
        // trail since the last fallback; `base` is its offset into `reduction`
        let mut base = 0;
        let mut elapsed: Vec<PauliWord> = vec![current.clone()];
        let mut seen: HashMap<Vec<PauliString>, usize> = HashMap::from([(current.rows().to_vec(), 0)]);
        // lowest weight reached; the fallback runs until it is beaten
        let mut record = weight0;
        let mut stale = 0;
        let mut fallback_root: Option<usize> = None;
        let mut iterations = 0;

        while current.row(pos).weight() > 1 {
            iterations += 1;
            if iterations > cap {
                return Err(Error::Heuristic(format!(
                    "no progress after {cap} steps; target row {} at weight {}, {} ops kept",
                    current.row(pos),
                    current.row(pos).weight(),
                    reduction.len()
                )));
            }

            if let Some(root) = fallback_root {
                let op = self.collapse_step(&current, pos, root);
                current = Self::apply(&current, &op);
                reduction.push(op);
                let w = current.row(pos).weight();
                if w < record {
                    record = w;
                    stale = 0;
                    fallback_root = None;
                    base = reduction.len();
                    elapsed = vec![current.clone()];
                    seen = HashMap::from([(current.rows().to_vec(), 0)]);
                }
                continue;
            }

            let candidates = gen_ops(&current, pos, ctx);
            let op = candidates
                .iter()
                .min_by_key(|c| (c.dist_after, c.weight_after))
                .ok_or_else(|| {
                    Error::Heuristic(format!("no coupled operation applies to row {}", current.row(pos)))
                })?;
            let next = Self::apply(&current, &op.gates);

            let revisit = seen.get(next.rows()).copied();
            match revisit {
                None => {
                    seen.insert(next.rows().to_vec(), elapsed.len());
                    reduction.push(op.gates.clone());
                    elapsed.push(next.clone());
                    current = next;
                    let w = current.row(pos).weight();
                    if w < record {
                        record = w;
                        stale = 0;
                    } else {
                        stale += 1;
                    }
                }
                Some(idx) => {
                    // loop: go back to the first visit
                    elapsed.truncate(idx + 1);
                    reduction.truncate(base + idx);
                    current = elapsed[idx].clone();
                }
            }
            if revisit.is_some() || stale > patience {
                let support = current.row(pos).support();
                let root = *support
                    .iter()
                    .min_by_key(|&&r| (support.iter().map(|&q| ctx.dist[q][r]).sum::<usize>(), r))
                    .expect("non-empty support");
                fallback_root = Some(root);
                // the fallback must beat the weight it starts from as well
                record = record.min(current.row(pos).weight());
            }
        }
        *word = current;
        gates.extend(reduction.into_iter().flatten());
        Ok(())
    }
}

/// Runs the hardware-aware heuristic on row `ndx` (an original index).
pub fn hardware_implement(
    word: &PauliWord,
    dag: &CommutationDag,
    mode: OrderingMode,
    ndx: usize,
    ctx: &HardwareContext,
) -> Result<(HeuristicOutcome, CommutationDag)> {
    require_weight(word, ndx)?;
    implement(word, dag, mode, ndx, &HardwareAware::new(ctx))
}
