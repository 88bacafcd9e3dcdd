use crate::error::Result;
use crate::ordering::{CommutationDag, OrderingMode};
use crate::pauli::{CliffordGate, PauliWord};

use super::{
    gen_q_pairs, implement, increasing_pair, mapped_pair, reducible_pair, require_weight,
    CliffordBlock, HeuristicOutcome, LocalClifford, ReductionHeuristic,
};

/// Greedy block selection for all-to-all connectivity.
#[derive(Clone, Copy, Debug, Default)]
pub struct LogicalGreedy;

fn pair_class(ctrl: crate::pauli::Pauli, targ: crate::pauli::Pauli) -> (i64, i64) {
    if reducible_pair(ctrl, targ) {
        (1, 1)
    } else if increasing_pair(ctrl, targ) {
        (-1, 0)
    } else {
        (0, 0)
    }
}

/// Returns `(benefit, reducible pairs after)` for conjugating the word's
/// `(i, j)` columns by `qpair`, relative to `CX(i, j)`.
fn score(word: &PauliWord, i: usize, j: usize, qpair: (LocalClifford, LocalClifford)) -> (i64, i64) {
    let identity = (LocalClifford::I, LocalClifford::I);
    let mut benefit = 0;
    let mut rp_after = 0;
    for row in word.rows() {
        let (before, _) = {
            let (a, b) = mapped_pair(row, i, j, identity);
            pair_class(a, b)
        };
        let (a, b) = mapped_pair(row, i, j, qpair);
        let (after, rp) = pair_class(a, b);
        benefit += after - before;
        rp_after += rp;
    }
    (benefit, rp_after)
}

/// `#RP - #IP` over the residual word after applying `qpair` to `(i, j)`,
/// minus the same count before.
pub fn benefit(word: &PauliWord, i: usize, j: usize, qpair: (LocalClifford, LocalClifford)) -> i64 {
    score(word, i, j, qpair).0
}

impl LogicalGreedy {
    /// Best block for the row at `pos`: highest benefit, then most reducible
    /// pairs, then lowest `(i, j, q-pair index)`.
    pub fn choose_block(&self, word: &PauliWord, pos: usize) -> Result<CliffordBlock> {
        let row = word.row(pos);
        let support = row.support();
        let mut best: Option<((i64, i64), CliffordBlock)> = None;
        for &i in &support {
            for &j in &support {
                if i == j {
                    continue;
                }
                for qpair in gen_q_pairs(row.letter(i), row.letter(j))? {
                    let s = score(word, i, j, qpair);
                    if best.as_ref().is_none_or(|(b, _)| s > *b) {
                        best = Some((
                            s,
                            CliffordBlock {
                                q_i: qpair.0,
                                q_j: qpair.1,
                                i,
                                j,
                            },
                        ));
                    }
                }
            }
        }
        // support has at least two qubits whenever this is called
        Ok(best.expect("weight > 1 row has a qubit pair").1)
    }
}

impl ReductionHeuristic for LogicalGreedy {
    fn name(&self) -> &str {
        "logical"
    }

    fn reduce(&self, word: &mut PauliWord, pos: usize, gates: &mut Vec<CliffordGate>) -> Result<()> {
        while word.row(pos).weight() > 1 {
            let before = word.row(pos).weight();
            let block = self.choose_block(word, pos)?;
            for g in block.gates() {
                word.conjugate(g);
                gates.push(g);
            }
            debug_assert_eq!(word.row(pos).weight() + 1, before);
        }
        Ok(())
    }
}

/// Runs the logical greedy heuristic on row `ndx` (an original index) and
/// prunes everything that becomes implementable.
pub fn logical_greedy_implement(
    word: &PauliWord,
    dag: &CommutationDag,
    mode: OrderingMode,
    ndx: usize,
) -> Result<(HeuristicOutcome, CommutationDag)> {
    require_weight(word, ndx)?;
    implement(word, dag, mode, ndx, &LogicalGreedy)
}
