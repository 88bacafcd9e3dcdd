mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{identity_order, matches_product};
use pauli_synth::circuit::compose;
use pauli_synth::harness::random_word;
use pauli_synth::heuristics::{gen_q_pairs, LogicalGreedy, ReductionHeuristic};
use pauli_synth::mcts::{rollout, Solution, SolutionSource, SynthState};
use pauli_synth::oracle::{equal_up_to_phase, pauli_matrix, word_unitary, DenseUnitary};
use pauli_synth::pauli::{apply_gate_word, parse_string};
use pauli_synth::tableau::synthesize_naive;
use pauli_synth::{
    build_dag, search, synthesize, Circuit, CliffordGate, Gate, HardwareContext, Heuristic,
    OrderingMode, Pauli, PauliString, PauliWord, SearchConfig, Tableau,
};

fn pauli_string(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(0usize..4, n), any::<bool>())
        .prop_map(|(ls, sign)| {
            let letters: Vec<Pauli> = ls.into_iter().map(|k| Pauli::ALL[k]).collect();
            PauliString::from_letters(&letters, sign)
        })
}

fn sized_string(max_n: usize) -> impl Strategy<Value = PauliString> {
    (1..=max_n).prop_flat_map(pauli_string)
}

fn gate(n: usize) -> impl Strategy<Value = CliffordGate> {
    (0usize..6, 0..n, 0..n.max(2) - 1).prop_map(move |(kind, q, t)| match kind {
        0 => CliffordGate::H(q),
        1 => CliffordGate::S(q),
        2 => CliffordGate::Sdg(q),
        3 => CliffordGate::X(q),
        4 => CliffordGate::Z(q),
        _ => CliffordGate::CX(q, if t >= q { t + 1 } else { t }),
    })
}

/// Strings of one size with a gate acting on them; CX needs two qubits.
fn string_and_gate(max_n: usize) -> impl Strategy<Value = (PauliString, CliffordGate)> {
    (2..=max_n).prop_flat_map(|n| (pauli_string(n), gate(n)))
}

fn word_from_seed(seed: u64, max_n: usize, max_k: usize) -> PauliWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(2..=max_k);
    random_word(n, k, rng.gen_range(0.3..0.9), &mut rng).unwrap()
}

fn dense_conjugate(n: usize, g: CliffordGate, p: &PauliString) -> DenseUnitary {
    let mut u = DenseUnitary::identity(n).unwrap();
    u.apply_gate(&Gate::from(g));
    u.matmul(&pauli_matrix(p).unwrap()).unwrap().matmul(&u.adjoint()).unwrap()
}

/// Rows still in the word that may go next in preserving order: nothing
/// earlier and still present anticommutes with them.
fn brute_front_layer(word: &PauliWord) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, p) in word.rows().iter().enumerate() {
        if word.rows()[..k].iter().all(|q| q.commutes(p).unwrap()) {
            out.push(word.orig_index(k));
        }
    }
    out
}

/// Checks that `order` respects every anticommuting pair of `word`.
fn is_topological(word: &PauliWord, order: &[usize]) -> bool {
    let pos: Vec<usize> = {
        let mut pos = vec![0; order.len()];
        for (k, &o) in order.iter().enumerate() {
            pos[o] = k;
        }
        pos
    };
    let rows = word.rows();
    (0..rows.len()).all(|a| {
        (a + 1..rows.len()).all(|b| rows[a].commutes(&rows[b]).unwrap() || pos[a] < pos[b])
    })
}

#[test]
fn render_parse_exhaustive_small() {
    for n in 1..=3 {
        for code in 0..4usize.pow(n as u32) {
            for sign in [false, true] {
                let letters: Vec<Pauli> = (0..n).map(|q| Pauli::ALL[(code >> (2 * q)) & 3]).collect();
                let p = PauliString::from_letters(&letters, sign);
                assert_eq!(parse_string(&p.to_string()).unwrap(), p);
            }
        }
    }
}

#[test]
fn gen_q_pairs_covers_all_letter_pairs() {
    for a in [Pauli::X, Pauli::Y, Pauli::Z] {
        for b in [Pauli::X, Pauli::Y, Pauli::Z] {
            assert!(!gen_q_pairs(a, b).unwrap().is_empty(), "{a:?}{b:?}");
        }
    }
}

#[test]
fn execution_order_convention() {
    // [H, S] runs H first, so its matrix is S * H
    let c = Circuit::from_gates(1, vec![Gate::H(0), Gate::S(0)]).unwrap();
    let u = pauli_synth::oracle::circuit_unitary(&c).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((u.get(0, 0).re - r).abs() < 1e-12 && (u.get(0, 1).re - r).abs() < 1e-12);
    assert!((u.get(1, 0).im - r).abs() < 1e-12 && (u.get(1, 1).im + r).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_round_trip(p in sized_string(6)) {
        prop_assert_eq!(parse_string(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn involutions((p, g) in string_and_gate(5)) {
        let q = g.validate(p.num_qubits());
        prop_assume!(q.is_ok());
        let back = p.conjugated(g).unwrap().conjugated(g.dagger()).unwrap();
        prop_assert_eq!(&back, &p);
        let n = p.num_qubits();
        let h = CliffordGate::H(n - 1);
        prop_assert_eq!(&p.conjugated(h).unwrap().conjugated(h).unwrap(), &p);
        let cx = CliffordGate::CX(0, n - 1);
        prop_assert_eq!(&p.conjugated(cx).unwrap().conjugated(cx).unwrap(), &p);
        let s = CliffordGate::S(0);
        let mut r = p.clone();
        for _ in 0..4 {
            r.apply_gate(s).unwrap();
        }
        prop_assert_eq!(&r, &p);
    }

    #[test]
    fn commutation_is_conjugation_invariant(
        (p, q, g) in (2usize..=5).prop_flat_map(|n| (pauli_string(n), pauli_string(n), gate(n)))
    ) {
        prop_assert_eq!(
            p.commutes(&q).unwrap(),
            p.conjugated(g).unwrap().commutes(&q.conjugated(g).unwrap()).unwrap()
        );
    }

    #[test]
    fn conjugation_matches_dense_matrices((p, g) in string_and_gate(3)) {
        let n = p.num_qubits();
        let got = pauli_matrix(&p.conjugated(g).unwrap()).unwrap();
        prop_assert!(got.max_abs_diff(&dense_conjugate(n, g, &p)) < 1e-12);
    }

    #[test]
    fn cnot_count_adds_under_compose(
        a in prop::collection::vec(gate(4), 0..20),
        b in prop::collection::vec(gate(4), 0..20),
    ) {
        let ca = Circuit::from_gates(4, a.into_iter().map(Gate::from).collect()).unwrap();
        let cb = Circuit::from_gates(4, b.into_iter().map(Gate::from).collect()).unwrap();
        let c = compose(&ca, &cb).unwrap();
        prop_assert_eq!(c.cnot_count(), ca.cnot_count() + cb.cnot_count());
        prop_assert!(c.depth() <= c.len());
    }

    #[test]
    fn disjoint_layers_have_max_depth(depths in prop::collection::vec(0usize..6, 4)) {
        let mut c = Circuit::new(4);
        for (q, &d) in depths.iter().enumerate() {
            for _ in 0..d {
                c.push(Gate::H(q)).unwrap();
            }
        }
        prop_assert_eq!(c.depth(), *depths.iter().max().unwrap());
    }

    #[test]
    fn front_layer_matches_brute_force(seed in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 8)) {
        let mut word = word_from_seed(seed, 5, 8);
        let mut dag = build_dag(&word);
        let mut k = 0;
        while !word.is_empty() {
            let front = dag.front_layer();
            prop_assert!(!front.is_empty());
            prop_assert_eq!(&front, &brute_front_layer(&word));
            let id = front[picks[k % picks.len()] % front.len()];
            dag.remove(id, OrderingMode::Preserving).unwrap();
            word.remove(word.position(id).unwrap());
            k += 1;
        }
    }

    #[test]
    fn topological_orders_preserve_the_product(seed in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 8)) {
        let word = word_from_seed(seed, 5, 8);
        let mut dag = build_dag(&word);
        let mut order = Vec::new();
        while !dag.front_layer().is_empty() {
            let front = dag.front_layer();
            let id = front[picks[order.len() % picks.len()] % front.len()];
            dag.remove(id, OrderingMode::Preserving).unwrap();
            order.push(id);
        }
        prop_assert_eq!(order.len(), word.len());
        prop_assert!(is_topological(&word, &order));
        let a = word_unitary(&word, &identity_order(&word)).unwrap();
        let b = word_unitary(&word, &order).unwrap();
        prop_assert!(equal_up_to_phase(&a, &b, 1e-9).unwrap());
    }

    #[test]
    fn modifying_mode_reaches_every_permutation(seed in any::<u64>(), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let word = word_from_seed(seed, 4, 8);
        let mut perm = identity_order(&word);
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let mut dag = build_dag(&word);
        for &id in &perm {
            prop_assert!(dag.available_actions(OrderingMode::Modifying).contains(&id));
            dag.remove(id, OrderingMode::Modifying).unwrap();
        }
    }

    #[test]
    fn logical_reduction_drops_weight_every_block(p in sized_string(8)) {
        prop_assume!(p.weight() >= 1);
        let mut word = PauliWord::from_rows(p.num_qubits(), vec![(p.clone(), 0.5)]).unwrap();
        let mut gates = Vec::new();
        LogicalGreedy.reduce(&mut word, 0, &mut gates).unwrap();
        // replay block by block: every CX lowers the weight by one
        let mut replay = p.clone();
        let mut last = replay.weight();
        for g in &gates {
            replay.apply_gate(*g).unwrap();
            if g.is_cx() {
                prop_assert_eq!(replay.weight() + 1, last);
                last = replay.weight();
            }
        }
        prop_assert_eq!(gates.iter().filter(|g| g.is_cx()).count(), p.weight() - 1);
    }

    #[test]
    fn step_replays_onto_residual_word(seed in any::<u64>(), pick in any::<usize>(), modify in any::<bool>()) {
        let word = word_from_seed(seed, 5, 8);
        let mode = if modify { OrderingMode::Modifying } else { OrderingMode::Preserving };
        let mut state = SynthState::new(word.clone(), mode);
        let actions = state.actions();
        let step = state.step(actions[pick % actions.len()], &Heuristic::Logical).unwrap();
        let mut replay = word.clone();
        for g in &step.blocks {
            replay = apply_gate_word(*g, &replay).unwrap();
        }
        for id in &step.order {
            replay.remove(replay.position(*id).unwrap());
        }
        prop_assert_eq!(&replay, &state.word);
    }

    #[test]
    fn any_legal_order_is_equivalent(seed in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 8), modify in any::<bool>(), hardware in any::<bool>()) {
        let word = word_from_seed(seed, 5, 8);
        let n = word.num_qubits();
        let mode = if modify { OrderingMode::Modifying } else { OrderingMode::Preserving };
        let heuristic = if hardware { Heuristic::Hardware(HardwareContext::path(n)) } else { Heuristic::Logical };
        let mut state = SynthState::new(word.clone(), mode);
        let mut steps = Vec::new();
        while !state.is_terminal() {
            let actions = state.actions();
            let a = actions[picks[steps.len() % picks.len()] % actions.len()];
            steps.push(state.step(a, &heuristic).unwrap());
        }
        let sol = Solution::from_steps(n, &steps, true, SolutionSource::Explored, 0).unwrap();
        if hardware {
            for g in sol.leading.gates() {
                if let Gate::CX(a, b) = *g {
                    prop_assert!(a.abs_diff(b) == 1);
                }
            }
        }
        let order = if modify { sol.order.clone() } else { identity_order(&word) };
        if !modify {
            prop_assert!(is_topological(&word, &sol.order));
        }
        prop_assert!(matches_product(&word, &order, &sol.circuit));
        let literal = Solution::from_steps(n, &steps, false, SolutionSource::Explored, 0).unwrap();
        prop_assert!(matches_product(&word, &order, &literal.circuit));
    }

    #[test]
    fn hardware_cx_on_coupled_edges(seed in any::<u64>(), topo in 0usize..3) {
        let ctx = match topo {
            0 => HardwareContext::path(6),
            1 => HardwareContext::ring(6),
            _ => HardwareContext::grid(2, 3),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(6, 6, 0.7, &mut rng).unwrap();
        let cfg = SearchConfig { iterations: 5, heuristic: Heuristic::Hardware(ctx.clone()), ..Default::default() };
        let out = search(&word, &cfg).unwrap();
        for g in out.best.leading.gates() {
            if let Gate::CX(a, b) = *g {
                prop_assert!(ctx.is_coupled(a, b), "CX({a},{b})");
            }
        }
    }

    #[test]
    fn search_is_monotone_deterministic_and_sound(seed in any::<u64>(), modify in any::<bool>()) {
        let word = word_from_seed(seed, 5, 7);
        let mode = if modify { OrderingMode::Modifying } else { OrderingMode::Preserving };
        let cfg = SearchConfig { iterations: 25, mode, seed, ..Default::default() };
        let a = search(&word, &cfg).unwrap();
        let b = search(&word, &cfg).unwrap();
        prop_assert!(a.best_per_iteration.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(&a.best_per_iteration, &b.best_per_iteration);
        prop_assert_eq!(&a.best.order, &b.best.order);
        prop_assert_eq!(a.best.circuit.to_qasm(), b.best.circuit.to_qasm());
        let order = if modify { a.best.order.clone() } else {
            prop_assert!(is_topological(&word, &a.best.order));
            identity_order(&word)
        };
        prop_assert!(matches_product(&word, &order, &a.best.circuit));
    }

    #[test]
    fn rollout_reward_is_minus_leading_cnots(seed in any::<u64>()) {
        use pauli_synth::mcts::SearchTree;
        let word = word_from_seed(seed, 5, 8);
        let state = SynthState::new(word.clone(), OrderingMode::Preserving);
        let steps = rollout(&state, &Heuristic::Logical).unwrap();
        let reward = -(steps.iter().map(|s| s.cnots()).sum::<usize>() as f64);
        let mut tree = SearchTree::new(state);
        tree.backpropagate(&[0], reward);
        let one = search(&word, &SearchConfig::default()).unwrap();
        prop_assert_eq!(tree.nodes[0].value, -(one.best.cnots_leading as f64));
    }

    #[test]
    fn tableau_round_trip_and_naive_bound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let mut t = Tableau::identity(n);
        for _ in 0..rng.gen_range(0..60) {
            let q = rng.gen_range(0..n);
            let g = match rng.gen_range(0..4) {
                0 => CliffordGate::H(q),
                1 => CliffordGate::S(q),
                2 => CliffordGate::X(q),
                _ if n > 1 => CliffordGate::CX(q, (q + rng.gen_range(1..n)) % n),
                _ => CliffordGate::Z(q),
            };
            t.apply(g).unwrap();
        }
        let c = synthesize(&t).unwrap();
        prop_assert_eq!(&Tableau::from_circuit(&c).unwrap(), &t);
        prop_assert!(c.cnot_count() <= synthesize_naive(&t).unwrap().cnot_count());
    }

    #[test]
    fn distances_match_floyd_warshall(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=8);
        // random spanning tree plus extra edges keeps the graph connected
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        for _ in 0..rng.gen_range(0..n) {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                edges.push((a, b));
            }
        }
        let ctx = HardwareContext::new(n, &edges).unwrap();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for &(a, b) in &edges {
            d[a][b] = 1;
            d[b][a] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
        for (i, row) in d.iter().enumerate() {
            for (j, &dij) in row.iter().enumerate() {
                prop_assert_eq!(ctx.distance(i, j), dij);
            }
        }
    }
}
