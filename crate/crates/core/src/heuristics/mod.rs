//! Implementation heuristics.
//!
//! A heuristic receives the residual word and a target row and emits Clifford
//! gates (conjugating the word as it goes) until the target has weight one.
//! [`implement`] then prunes every row that can be emitted as a single `Rz`
//! and returns the reduced word with the leading circuit fragment.
//!
//! New targets plug in through [`ReductionHeuristic`].

mod hardware;
mod logical;

pub use hardware::{
    all_pairs_distance, dist_metric, gen_ops, hardware_implement, occupancy, Candidate,
    HardwareAware, HardwareContext,
};
pub use logical::{benefit, logical_greedy_implement, LogicalGreedy};

use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::ordering::{CommutationDag, OrderingMode};
use crate::pauli::{CliffordGate, Pauli, PauliString, PauliWord};

/// The single-qubit part `Q` of a Clifford block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalClifford {
    I,
    H,
    S,
}

impl LocalClifford {
    pub const ALL: [LocalClifford; 3] = [LocalClifford::I, LocalClifford::H, LocalClifford::S];

    pub fn gate(self, q: usize) -> Option<CliffordGate> {
        match self {
            LocalClifford::I => None,
            LocalClifford::H => Some(CliffordGate::H(q)),
            LocalClifford::S => Some(CliffordGate::S(q)),
        }
    }

    /// Letter after conjugation, ignoring sign.
    pub fn map(self, p: Pauli) -> Pauli {
        match (self, p) {
            (LocalClifford::H, Pauli::X) => Pauli::Z,
            (LocalClifford::H, Pauli::Z) => Pauli::X,
            (LocalClifford::S, Pauli::X) => Pauli::Y,
            (LocalClifford::S, Pauli::Y) => Pauli::X,
            (_, p) => p,
        }
    }
}

/// `(Q_i, Q_j)` followed by `CX(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliffordBlock {
    pub q_i: LocalClifford,
    pub q_j: LocalClifford,
    pub i: usize,
    pub j: usize,
}

impl CliffordBlock {
    pub fn gates(&self) -> Vec<CliffordGate> {
        self.q_i
            .gate(self.i)
            .into_iter()
            .chain(self.q_j.gate(self.j))
            .chain(std::iter::once(CliffordGate::CX(self.i, self.j)))
            .collect()
    }
}

/// `(control, target)` letter pairs whose weight drops under `CX`.
pub fn reducible_pair(ctrl: Pauli, targ: Pauli) -> bool {
    use Pauli::*;
    matches!((ctrl, targ), (X, X) | (Z, Z) | (Y, X) | (Z, Y))
}

/// `(control, target)` letter pairs whose weight grows under `CX`.
pub fn increasing_pair(ctrl: Pauli, targ: Pauli) -> bool {
    use Pauli::*;
    matches!((ctrl, targ), (X, I) | (I, Z) | (Y, I) | (I, Y))
}

/// All `(Q_i, Q_j)` that turn a non-identity `(ctrl, targ)` into a reducible
/// pair, in `{I, H, S}^2` enumeration order.
pub fn gen_q_pairs(ctrl: Pauli, targ: Pauli) -> Result<Vec<(LocalClifford, LocalClifford)>> {
    if ctrl.is_identity() || targ.is_identity() {
        return Err(Error::Contract(format!(
            "gen_q_pairs needs non-identity letters, got ({ctrl}, {targ})"
        )));
    }
    let mut out = Vec::new();
    for qi in LocalClifford::ALL {
        for qj in LocalClifford::ALL {
            if reducible_pair(qi.map(ctrl), qj.map(targ)) {
                out.push((qi, qj));
            }
        }
    }
    Ok(out)
}

/// Gate-level extension point for implementation heuristics.
pub trait ReductionHeuristic {
    fn name(&self) -> &str;

    /// Appends gates to `gates`, conjugating `word` by each, until the row at
    /// `pos` has weight one. The row has weight at least one on entry.
    fn reduce(&self, word: &mut PauliWord, pos: usize, gates: &mut Vec<CliffordGate>) -> Result<()>;
}

/// Built-in heuristics, selectable by name.
#[derive(Clone, Debug)]
pub enum Heuristic {
    Logical,
    Hardware(HardwareContext),
}

impl Heuristic {
    pub fn from_name(name: &str, ctx: Option<HardwareContext>) -> Result<Self> {
        match (name, ctx) {
            ("logical", _) => Ok(Heuristic::Logical),
            ("hardware", Some(ctx)) => Ok(Heuristic::Hardware(ctx)),
            ("hardware", None) => Err(Error::Input(
                "the hardware heuristic needs a coupling graph".into(),
            )),
            (other, _) => Err(Error::Input(format!("unknown heuristic {other:?}"))),
        }
    }

    pub fn context(&self) -> Option<&HardwareContext> {
        match self {
            Heuristic::Logical => None,
            Heuristic::Hardware(ctx) => Some(ctx),
        }
    }
}

impl ReductionHeuristic for Heuristic {
    fn name(&self) -> &str {
        match self {
            Heuristic::Logical => "logical",
            Heuristic::Hardware(_) => "hardware",
        }
    }

    fn reduce(&self, word: &mut PauliWord, pos: usize, gates: &mut Vec<CliffordGate>) -> Result<()> {
        match self {
            Heuristic::Logical => LogicalGreedy.reduce(word, pos, gates),
            Heuristic::Hardware(ctx) => HardwareAware::new(ctx).reduce(word, pos, gates),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ImplementedRow {
    pub orig_index: usize,
    pub qubit: usize,
    pub angle: f64,
}

/// Everything one implementation step contributes, minus the residual word.
#[derive(Clone, Debug, Default)]
pub struct Step {
    /// Clifford gates and `Rz` rotations in execution order.
    pub gates: Vec<Gate>,
    pub global_phase: f64,
    /// Every Clifford gate of `gates`, in order; their inverses form the tail.
    pub blocks: Vec<CliffordGate>,
    pub implemented: Vec<ImplementedRow>,
    /// All-identity rows folded into the global phase.
    pub dropped: Vec<usize>,
    /// Original indices in the order the rows left the word.
    pub order: Vec<usize>,
}

impl Step {
    pub fn cnots(&self) -> usize {
        self.blocks.iter().filter(|g| g.is_cx()).count()
    }

    pub fn removed(&self) -> usize {
        self.order.len()
    }

    pub fn circuit(&self, n: usize) -> Circuit {
        let mut c = Circuit::new(n);
        for g in &self.gates {
            c.push_unchecked(*g);
        }
        c.global_phase = self.global_phase;
        c
    }
}

#[derive(Clone, Debug)]
pub struct HeuristicOutcome {
    pub reduced_word: PauliWord,
    pub leading_circuit: Circuit,
    pub step: Step,
}

impl HeuristicOutcome {
    pub fn blocks(&self) -> &[CliffordGate] {
        &self.step.blocks
    }

    pub fn implemented(&self) -> &[ImplementedRow] {
        &self.step.implemented
    }
}

fn push_clifford(word: &mut PauliWord, step: &mut Step, g: CliffordGate) {
    word.conjugate(g);
    step.blocks.push(g);
    step.gates.push(g.into());
}

/// Rotates a weight-one row to `Z` with at most two single-qubit gates.
fn rotate_to_z(word: &mut PauliWord, pos: usize, step: &mut Step) -> usize {
    let q = word.row(pos).support()[0];
    match word.row(pos).letter(q) {
        Pauli::X => push_clifford(word, step, CliffordGate::H(q)),
        Pauli::Y => {
            push_clifford(word, step, CliffordGate::Sdg(q));
            push_clifford(word, step, CliffordGate::H(q));
        }
        _ => {}
    }
    q
}

/// Removes every row of weight at most one that may legally leave the word.
/// Legality is re-evaluated after each removal, so pruning one row can admit
/// the next.
pub fn prune(word: &mut PauliWord, dag: &mut CommutationDag, mode: OrderingMode, step: &mut Step) -> Result<()> {
    loop {
        let found = (0..word.len())
            .find(|&p| word.row(p).weight() <= 1 && dag.is_removable(word.orig_index(p), mode));
        let Some(pos) = found else {
            return Ok(());
        };
        let theta = word.theta(pos);
        let orig = word.orig_index(pos);
        let sign = if word.row(pos).sign() { -1.0 } else { 1.0 };
        if word.row(pos).weight() == 0 {
            step.global_phase -= theta * sign;
            step.dropped.push(orig);
        } else {
            let q = rotate_to_z(word, pos, step);
            debug_assert_eq!(word.row(pos).letter(q), Pauli::Z);
            // the sign may have changed while rotating
            let sign = if word.row(pos).sign() { -1.0 } else { 1.0 };
            let angle = 2.0 * theta * sign;
            step.gates.push(Gate::Rz(q, angle));
            step.implemented.push(ImplementedRow {
                orig_index: orig,
                qubit: q,
                angle,
            });
        }
        word.remove(pos);
        dag.remove(orig, mode)?;
        step.order.push(orig);
    }
}

/// Implements row `target` (an original index) in place: reduce with the
/// heuristic, then prune. Weight-zero targets are dropped into the phase.
pub fn implement_in_place(
    word: &mut PauliWord,
    dag: &mut CommutationDag,
    mode: OrderingMode,
    target: usize,
    heuristic: &dyn ReductionHeuristic,
) -> Result<Step> {
    if !dag.is_removable(target, mode) {
        return Err(Error::Contract(format!("row {target} is not an available action")));
    }
    let pos = word
        .position(target)
        .ok_or_else(|| Error::Contract(format!("row {target} is not in the word")))?;
    let mut step = Step::default();
    if word.row(pos).weight() > 1 {
        let before = step.blocks.len();
        heuristic.reduce(word, pos, &mut step.blocks)?;
        for &g in &step.blocks[before..] {
            g.validate(word.num_qubits())?;
            step.gates.push(g.into());
        }
        let w = word.row(pos).weight();
        if w != 1 {
            return Err(Error::Heuristic(format!(
                "{} left row {target} at weight {w}",
                heuristic.name()
            )));
        }
    }
    prune(word, dag, mode, &mut step)?;
    if !step.order.contains(&target) {
        return Err(Error::Heuristic(format!("row {target} was not pruned")));
    }
    Ok(step)
}

/// Copying variant of [`implement_in_place`].
pub fn implement(
    word: &PauliWord,
    dag: &CommutationDag,
    mode: OrderingMode,
    target: usize,
    heuristic: &dyn ReductionHeuristic,
) -> Result<(HeuristicOutcome, CommutationDag)> {
    let mut w = word.clone();
    let mut d = dag.clone();
    let step = implement_in_place(&mut w, &mut d, mode, target, heuristic)?;
    let leading_circuit = step.circuit(word.num_qubits());
    Ok((
        HeuristicOutcome {
            reduced_word: w,
            leading_circuit,
            step,
        },
        d,
    ))
}

pub(crate) fn require_weight(word: &PauliWord, target: usize) -> Result<usize> {
    let pos = word
        .position(target)
        .ok_or_else(|| Error::Contract(format!("row {target} is not in the word")))?;
    if word.row(pos).weight() == 0 {
        return Err(Error::Contract(format!(
            "row {target} has weight zero; it is a pure phase"
        )));
    }
    Ok(pos)
}

/// Letters of `p` at `(i, j)` after applying a `Q` pair.
pub(crate) fn mapped_pair(p: &PauliString, i: usize, j: usize, q: (LocalClifford, LocalClifford)) -> (Pauli, Pauli) {
    (q.0.map(p.letter(i)), q.1.map(p.letter(j)))
}
