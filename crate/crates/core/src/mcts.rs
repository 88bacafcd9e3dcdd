//! Monte Carlo Tree Search over implementation orders.
//!
//! A state is the residual word plus the rows still active in the commutation
//! DAG; an action is the original index of the next row to implement; the
//! one-step reward is minus the CNOTs that implementation emits. Each
//! iteration selects with UCT, expands one node, runs the greedy
//! least-weight rollout and backpropagates running averages. Every terminal
//! reached, by the tree or by a rollout, is archived; the best archived
//! solution (after tail resynthesis) is returned.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{compose, Circuit, Gate};
use crate::error::{Error, Result};
use crate::heuristics::{implement_in_place, Heuristic, ReductionHeuristic, Step};
use crate::ordering::{build_dag, CommutationDag, OrderingMode};
use crate::pauli::{CliffordGate, PauliWord};
use crate::tableau::{accumulate_tail, inverse_sequence, synthesize};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub iterations: usize,
    /// Exploration factor of the UCT bonus.
    pub mu: f64,
    /// Seeds tie-breaking between equally scored visited actions.
    pub seed: u64,
    pub mode: OrderingMode,
    pub heuristic: Heuristic,
    /// Resynthesize the tail Clifford; otherwise emit the literal inverse
    /// of the leading Clifford gates.
    pub tail_opt: bool,
    /// Print `iter,best_cnots,elapsed_ms` to stderr after every iteration.
    pub progress: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            iterations: 1,
            mu: std::f64::consts::SQRT_2,
            seed: 0,
            mode: OrderingMode::Preserving,
            heuristic: Heuristic::Logical,
            tail_opt: true,
            progress: false,
        }
    }
}

/// Residual word and DAG; the MDP state.
#[derive(Clone, Debug)]
pub struct SynthState {
    pub word: PauliWord,
    pub dag: CommutationDag,
    pub mode: OrderingMode,
}

impl SynthState {
    pub fn new(word: PauliWord, mode: OrderingMode) -> Self {
        let dag = build_dag(&word);
        SynthState { word, dag, mode }
    }

    pub fn actions(&self) -> Vec<usize> {
        self.dag.available_actions(self.mode)
    }

    pub fn is_terminal(&self) -> bool {
        self.word.is_empty()
    }

    pub fn weight_of(&self, orig: usize) -> Option<usize> {
        self.word.position(orig).map(|p| self.word.row(p).weight())
    }

    pub fn step(&mut self, action: usize, heuristic: &dyn ReductionHeuristic) -> Result<Step> {
        implement_in_place(&mut self.word, &mut self.dag, self.mode, action, heuristic)
    }
}

/// Available action of least current weight, ties to the lowest index.
pub fn greedy_action(state: &SynthState) -> Option<usize> {
    state
        .actions()
        .into_iter()
        .min_by_key(|&a| (state.weight_of(a).unwrap_or(usize::MAX), a))
}

/// Greedy least-weight policy to a terminal state.
pub fn rollout(state: &SynthState, heuristic: &dyn ReductionHeuristic) -> Result<Vec<Step>> {
    let mut s = state.clone();
    let mut steps = Vec::new();
    while let Some(a) = greedy_action(&s) {
        steps.push(s.step(a, heuristic)?);
    }
    debug_assert!(s.is_terminal());
    Ok(steps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionSource {
    Explored,
    Rollout,
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Original indices in implementation order.
    pub order: Vec<usize>,
    /// Clifford blocks and `Rz` rotations, before the tail.
    pub leading: Circuit,
    pub tail: Circuit,
    /// `leading` followed by `tail`.
    pub circuit: Circuit,
    pub cnots_leading: usize,
    pub source: SolutionSource,
    /// 1-based iteration that first produced this solution.
    pub discovered_at: usize,
}

impl Solution {
    /// Assembles a solution from consecutive steps.
    pub fn from_steps<'a>(
        n: usize,
        steps: impl IntoIterator<Item = &'a Step>,
        tail_opt: bool,
        source: SolutionSource,
        discovered_at: usize,
    ) -> Result<Solution> {
        let mut leading = Circuit::new(n);
        let mut order = Vec::new();
        let mut blocks: Vec<CliffordGate> = Vec::new();
        for s in steps {
            for g in &s.gates {
                leading.push_unchecked(*g);
            }
            leading.global_phase += s.global_phase;
            blocks.extend_from_slice(&s.blocks);
            order.extend_from_slice(&s.order);
        }
        let tail = if tail_opt {
            synthesize(&accumulate_tail(n, &blocks)?)?
        } else {
            let mut c = Circuit::new(n);
            for g in inverse_sequence(&blocks) {
                c.push_unchecked(Gate::from(g));
            }
            c
        };
        let circuit = compose(&leading, &tail)?;
        Ok(Solution {
            order,
            cnots_leading: leading.cnot_count(),
            leading,
            tail,
            circuit,
            source,
            discovered_at,
        })
    }

    pub fn total_cnots(&self) -> usize {
        self.circuit.cnot_count()
    }

    pub fn depth(&self) -> usize {
        self.circuit.depth()
    }

    fn rank(&self) -> (usize, usize) {
        (self.total_cnots(), self.depth())
    }
}

/// Greedy rollout from the initial state; the single-iteration result.
pub fn greedy_solution(word: &PauliWord, mode: OrderingMode, heuristic: &dyn ReductionHeuristic, tail_opt: bool) -> Result<Solution> {
    let state = SynthState::new(word.clone(), mode);
    let steps = rollout(&state, heuristic)?;
    Solution::from_steps(word.num_qubits(), &steps, tail_opt, SolutionSource::Rollout, 1)
}

/// Per-action statistics used by UCT.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActionStats {
    pub action: usize,
    /// `N(s, a)`.
    pub visits: u32,
    /// `r(s, a)`.
    pub reward: f64,
    /// `V(phi(s, a))`, `None` when the child does not exist or is unvisited.
    pub value: Option<f64>,
}

fn uct_score(a: &ActionStats, parent_visits: u32, mu: f64) -> f64 {
    match a.value {
        Some(v) if a.visits > 0 => {
            a.reward + v + mu * ((parent_visits as f64).ln() / a.visits as f64).sqrt()
        }
        _ => f64::INFINITY,
    }
}

/// Indices into `actions` that share the maximal UCT score. Unvisited actions
/// score `+inf`; among those only the lowest action index is returned.
fn uct_candidates(actions: &[ActionStats], parent_visits: u32, mu: f64) -> Result<Vec<usize>> {
    if actions.is_empty() {
        return Err(Error::Contract("UCT selection over an empty action set".into()));
    }
    let scores: Vec<f64> = actions.iter().map(|a| uct_score(a, parent_visits, mu)).collect();
    if let Some(k) = (0..actions.len())
        .filter(|&k| scores[k].is_infinite())
        .min_by_key(|&k| actions[k].action)
    {
        return Ok(vec![k]);
    }
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut ties: Vec<usize> = (0..actions.len()).filter(|&k| scores[k] == best).collect();
    ties.sort_by_key(|&k| actions[k].action);
    Ok(ties)
}

/// `argmax_a r(s,a) + V(phi(s,a)) + mu sqrt(ln N_s / N_{s,a})`; exact ties go
/// to the lowest action index.
pub fn uct_select(actions: &[ActionStats], parent_visits: u32, mu: f64) -> Result<usize> {
    let k = uct_candidates(actions, parent_visits, mu)?[0];
    Ok(actions[k].action)
}

#[derive(Clone, Debug)]
pub struct SearchNode {
    pub parent: Option<usize>,
    pub action: Option<usize>,
    pub state: SynthState,
    /// Step taken from the parent to reach this node.
    pub step: Option<Arc<Step>>,
    pub children: BTreeMap<usize, usize>,
    pub actions: Vec<usize>,
    /// Running average of the reward-to-go from this node.
    pub value: f64,
    /// Simulations through this node, including the one launched when it was
    /// created.
    pub visits: u32,
    pub action_visits: BTreeMap<usize, u32>,
    pub action_reward: BTreeMap<usize, f64>,
    /// No unexplored terminal remains below this node.
    pub exhausted: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SearchTree {
    pub nodes: Vec<SearchNode>,
}

impl SearchTree {
    pub fn new(root: SynthState) -> Self {
        let actions = root.actions();
        let exhausted = root.is_terminal();
        SearchTree {
            nodes: vec![SearchNode {
                parent: None,
                action: None,
                state: root,
                step: None,
                children: BTreeMap::new(),
                actions,
                value: 0.0,
                visits: 0,
                action_visits: BTreeMap::new(),
                action_reward: BTreeMap::new(),
                exhausted,
            }],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn action_stats(&self, id: usize) -> Vec<ActionStats> {
        let node = &self.nodes[id];
        node.actions
            .iter()
            .filter(|a| node.children.get(a).is_none_or(|&c| !self.nodes[c].exhausted))
            .map(|&a| {
                let child = node.children.get(&a).map(|&c| &self.nodes[c]);
                ActionStats {
                    action: a,
                    visits: node.action_visits.get(&a).copied().unwrap_or(0),
                    reward: node.action_reward.get(&a).copied().unwrap_or(0.0),
                    value: child.filter(|c| c.visits > 0).map(|c| c.value),
                }
            })
            .collect()
    }

    /// Adds the child reached by `action` from `parent`.
    pub fn expand(&mut self, parent: usize, action: usize, heuristic: &dyn ReductionHeuristic) -> Result<usize> {
        let mut state = self.nodes[parent].state.clone();
        let step = state.step(action, heuristic)?;
        let reward = -(step.cnots() as f64);
        let actions = state.actions();
        let exhausted = state.is_terminal();
        let id = self.nodes.len();
        self.nodes.push(SearchNode {
            parent: Some(parent),
            action: Some(action),
            state,
            step: Some(Arc::new(step)),
            children: BTreeMap::new(),
            actions,
            value: 0.0,
            visits: 0,
            action_visits: BTreeMap::new(),
            action_reward: BTreeMap::new(),
            exhausted,
        });
        let p = &mut self.nodes[parent];
        p.children.insert(action, id);
        p.action_reward.insert(action, reward);
        Ok(id)
    }

    /// Running-average update along `path` (root first). The reward-to-go of
    /// each node is the suffix sum of the tree-edge rewards below it plus
    /// `rollout_reward`.
    pub fn backpropagate(&mut self, path: &[usize], rollout_reward: f64) {
        let mut to_go = rollout_reward;
        for k in (0..path.len()).rev() {
            let id = path[k];
            if k + 1 < path.len() {
                let a = self.nodes[path[k + 1]].action.expect("non-root node has an action");
                let r = self.nodes[id].action_reward[&a];
                to_go += r;
                *self.nodes[id].action_visits.entry(a).or_insert(0) += 1;
            }
            let node = &mut self.nodes[id];
            node.visits += 1;
            node.value += (to_go - node.value) / node.visits as f64;
        }
    }

    fn refresh_exhausted(&mut self, path: &[usize]) {
        for &id in path.iter().rev() {
            let node = &self.nodes[id];
            let done = node.state.is_terminal()
                || (node.children.len() == node.actions.len()
                    && node.children.values().all(|&c| self.nodes[c].exhausted));
            self.nodes[id].exhausted = done;
        }
    }

    fn path_steps(&self, path: &[usize]) -> Vec<Arc<Step>> {
        path.iter()
            .filter_map(|&id| self.nodes[id].step.clone())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: Solution,
    /// Best total CNOT count after each iteration.
    pub best_per_iteration: Vec<usize>,
    /// Wall time of each iteration, milliseconds.
    pub elapsed_ms: Vec<f64>,
    pub archive_size: usize,
    pub tree_size: usize,
}

/// Runs the search with the heuristic named in `cfg`.
pub fn search(word: &PauliWord, cfg: &SearchConfig) -> Result<SearchOutcome> {
    search_with(word, cfg, &cfg.heuristic)
}

/// Runs the search with an arbitrary heuristic.
pub fn search_with(word: &PauliWord, cfg: &SearchConfig, heuristic: &dyn ReductionHeuristic) -> Result<SearchOutcome> {
    if word.is_empty() {
        return Err(Error::Contract("cannot search over an empty word".into()));
    }
    if cfg.iterations == 0 {
        return Err(Error::Input("iterations must be at least 1".into()));
    }
    if cfg.mu.is_nan() || cfg.mu < 0.0 {
        return Err(Error::Input(format!("mu must be non-negative, got {}", cfg.mu)));
    }
    let n = word.num_qubits();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tree = SearchTree::new(SynthState::new(word.clone(), cfg.mode));
    let mut archived: HashSet<Vec<usize>> = HashSet::new();
    let mut best: Option<Solution> = None;
    let mut best_per_iteration = Vec::with_capacity(cfg.iterations);
    let mut elapsed_ms = Vec::with_capacity(cfg.iterations);
    let start = Instant::now();

    for iteration in 1..=cfg.iterations {
        let t0 = Instant::now();
        if !tree.nodes[0].exhausted {
            // selection and expansion
            let mut path = vec![0];
            let mut cur = 0;
            loop {
                let node = &tree.nodes[cur];
                if node.state.is_terminal() || node.visits == 0 {
                    break;
                }
                let stats = tree.action_stats(cur);
                let ties = uct_candidates(&stats, node.visits, cfg.mu)?;
                let a = stats[*ties.choose(&mut rng).expect("non-empty")].action;
                match node.children.get(&a) {
                    Some(&c) => {
                        cur = c;
                        path.push(c);
                    }
                    None => {
                        cur = tree.expand(cur, a, heuristic)?;
                        path.push(cur);
                        break;
                    }
                }
            }

            // simulation
            let leaf = &tree.nodes[cur];
            let (sim, source) = if leaf.state.is_terminal() {
                (Vec::new(), SolutionSource::Explored)
            } else {
                (rollout(&leaf.state, heuristic)?, SolutionSource::Rollout)
            };
            let rollout_reward = -(sim.iter().map(Step::cnots).sum::<usize>() as f64);
            tree.backpropagate(&path, rollout_reward);
            tree.refresh_exhausted(&path);

            // archive
            let prefix = tree.path_steps(&path);
            let order: Vec<usize> = prefix
                .iter()
                .map(|s| s.as_ref())
                .chain(&sim)
                .flat_map(|s| s.order.iter().copied())
                .collect();
            if archived.insert(order) {
                let steps = prefix.iter().map(|s| s.as_ref()).chain(&sim);
                let sol = Solution::from_steps(n, steps, cfg.tail_opt, source, iteration)?;
                if best.as_ref().is_none_or(|b| sol.rank() < b.rank()) {
                    best = Some(sol);
                }
            }
        }
        let current = best.as_ref().expect("first iteration archives a solution").total_cnots();
        best_per_iteration.push(current);
        elapsed_ms.push(t0.elapsed().as_secs_f64() * 1e3);
        if cfg.progress {
            eprintln!("{iteration},{current},{:.3}", start.elapsed().as_secs_f64() * 1e3);
        }
    }

    if cfg.tail_opt && matches!(cfg.heuristic, Heuristic::Hardware(_)) {
        log::warn!("tail Clifford is synthesized without connectivity constraints");
    }

    Ok(SearchOutcome {
        best: best.expect("at least one iteration ran"),
        best_per_iteration,
        elapsed_ms,
        archive_size: archived.len(),
        tree_size: tree.len(),
    })
}
