#![allow(dead_code)]

use pauli_synth::heuristics::{ReductionHeuristic, Step};
use pauli_synth::mcts::{Solution, SolutionSource, SynthState};
use pauli_synth::oracle::{circuit_unitary, equal_up_to_phase, word_unitary};
use pauli_synth::{Circuit, OrderingMode, PauliWord};

pub const TOL: f64 = 1e-9;

/// Every legal complete order, by depth-first search over the MDP.
pub fn enumerate_solutions(
    word: &PauliWord,
    mode: OrderingMode,
    heuristic: &dyn ReductionHeuristic,
    tail_opt: bool,
) -> Vec<Solution> {
    fn go(
        state: &SynthState,
        prefix: &mut Vec<Step>,
        heuristic: &dyn ReductionHeuristic,
        tail_opt: bool,
        out: &mut Vec<Solution>,
    ) {
        if state.is_terminal() {
            let n = state.word.num_qubits();
            out.push(Solution::from_steps(n, prefix.iter(), tail_opt, SolutionSource::Explored, 0).unwrap());
            return;
        }
        for a in state.actions() {
            let mut next = state.clone();
            prefix.push(next.step(a, heuristic).unwrap());
            go(&next, prefix, heuristic, tail_opt, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&SynthState::new(word.clone(), mode), &mut Vec::new(), heuristic, tail_opt, &mut out);
    out
}

pub fn exhaustive_min_cnots(word: &PauliWord, mode: OrderingMode, heuristic: &dyn ReductionHeuristic) -> usize {
    enumerate_solutions(word, mode, heuristic, true)
        .iter()
        .map(Solution::total_cnots)
        .min()
        .unwrap()
}

/// Circuit equals the rotation product taken in `order`, up to global phase.
pub fn matches_product(word: &PauliWord, order: &[usize], c: &Circuit) -> bool {
    let expect = word_unitary(word, order).unwrap();
    let got = circuit_unitary(c).unwrap();
    equal_up_to_phase(&expect, &got, TOL).unwrap()
}

pub fn identity_order(word: &PauliWord) -> Vec<usize> {
    (0..word.len()).collect()
}
