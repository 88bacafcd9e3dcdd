mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{exhaustive_min_cnots, identity_order, matches_product};
use pauli_synth::harness::{
    generate_heisenberg, lattice_edges, parse_hamiltonian, parse_hamiltonian_str, random_word,
    run_in_memory, write_hamiltonian, Args,
};
use pauli_synth::mcts::greedy_solution;
use pauli_synth::{build_dag, search, HardwareContext, Heuristic, OrderingMode, SearchConfig};

#[test]
fn generated_file_round_trips() {
    let w = random_word(7, 100, 0.5, &mut ChaCha8Rng::seed_from_u64(100)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    std::fs::write(&path, write_hamiltonian(&w)).unwrap();
    assert_eq!(parse_hamiltonian(&path).unwrap(), w);
}

#[test]
fn grid_distances_by_hand() {
    // 0 1 2
    // 3 4 5
    let ctx = HardwareContext::new(6, &lattice_edges(2, 3)).unwrap();
    let expect = [
        [0, 1, 2, 1, 2, 3],
        [1, 0, 1, 2, 1, 2],
        [2, 1, 0, 3, 2, 1],
        [1, 2, 3, 0, 1, 2],
        [2, 1, 2, 1, 0, 1],
        [3, 2, 1, 2, 1, 0],
    ];
    for (a, row) in expect.iter().enumerate() {
        for (b, &d) in row.iter().enumerate() {
            assert_eq!(ctx.distance(a, b), d);
        }
    }
    let err = HardwareContext::new(4, &[(0, 1), (2, 3)]).unwrap_err();
    assert!(err.to_string().contains("[0, 1]"));
}

#[test]
fn heisenberg_front_layer() {
    let w = generate_heisenberg(2, 2, 1.0, 0.05).unwrap();
    let dag = build_dag(&w);
    let brute: Vec<usize> = (0..w.len())
        .filter(|&k| (0..k).all(|j| w.row(j).commutes(w.row(k)).unwrap()))
        .collect();
    assert_eq!(dag.front_layer(), brute);
    let out = search(&w, &SearchConfig { iterations: 20, ..Default::default() }).unwrap();
    assert!(matches_product(&w, &identity_order(&w), &out.best.circuit));
}

#[test]
fn more_iterations_never_hurt() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for seed in 0..10 {
        let w = random_word(5, 10, 0.6, &mut rng).unwrap();
        let mut args = Args::for_file("unused");
        args.seed = seed;
        let one = run_in_memory(&args, &w).unwrap().report.cnots;
        args.iterations = 200;
        let many = run_in_memory(&args, &w).unwrap().report.cnots;
        assert!(many <= one, "seed {seed}: {many} > {one}");
    }
}

#[test]
fn modify_beats_preserve_in_aggregate() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (mut preserve, mut modify) = (0, 0);
    for seed in 0..20 {
        let w = random_word(5, 10, 0.8, &mut rng).unwrap();
        let cfg = |mode| SearchConfig { iterations: 50, mode, seed, ..Default::default() };
        preserve += search(&w, &cfg(OrderingMode::Preserving)).unwrap().best.total_cnots();
        modify += search(&w, &cfg(OrderingMode::Modifying)).unwrap().best.total_cnots();
    }
    assert!(modify <= preserve, "modify {modify} > preserve {preserve}");
}

#[test]
fn single_iteration_is_the_greedy_rollout() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let w = random_word(rng.gen_range(2..=6), rng.gen_range(1..=10), 0.6, &mut rng).unwrap();
        for mode in [OrderingMode::Preserving, OrderingMode::Modifying] {
            let g = greedy_solution(&w, mode, &Heuristic::Logical, true).unwrap();
            let s = search(&w, &SearchConfig { mode, ..Default::default() }).unwrap();
            assert_eq!(s.best.order, g.order);
            assert_eq!(s.best.circuit.to_qasm(), g.circuit.to_qasm());
        }
    }
}

#[test]
fn three_rows_reach_the_exhaustive_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..15 {
        let w = random_word(4, 3, 0.8, &mut rng).unwrap();
        for mode in [OrderingMode::Preserving, OrderingMode::Modifying] {
            let out = search(&w, &SearchConfig { iterations: 60, mode, seed, ..Default::default() }).unwrap();
            assert_eq!(out.best.total_cnots(), exhaustive_min_cnots(&w, mode, &Heuristic::Logical));
        }
    }
}

#[test]
fn hardware_pipeline_on_heisenberg_grid() {
    let w = generate_heisenberg(2, 3, 0.5, 0.1).unwrap();
    let ctx = HardwareContext::new(6, &lattice_edges(2, 3)).unwrap();
    let cfg = SearchConfig { iterations: 10, heuristic: Heuristic::Hardware(ctx.clone()), ..Default::default() };
    let out = search(&w, &cfg).unwrap();
    for g in out.best.leading.gates() {
        if let pauli_synth::Gate::CX(a, b) = *g {
            assert!(ctx.is_coupled(a, b));
        }
    }
    assert!(matches_product(&w, &identity_order(&w), &out.best.circuit));
}

#[test]
fn hardware_stress_on_sparse_layouts() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for ctx in [HardwareContext::path(8), HardwareContext::ring(8), HardwareContext::grid(2, 4), HardwareContext::grid(3, 3)] {
        for _ in 0..25 {
            let w = random_word(ctx.num_qubits(), 6, rng.gen_range(0.3..1.0), &mut rng).unwrap();
            let cfg = SearchConfig { iterations: 3, heuristic: Heuristic::Hardware(ctx.clone()), ..Default::default() };
            search(&w, &cfg).unwrap();
        }
    }
}

#[test]
fn comment_only_lines_and_weight_zero_rows() {
    let w = parse_hamiltonian_str("# c\nIII 0.3\nXYZ 0.1\nIII -0.2\n").unwrap();
    let out = search(&w, &SearchConfig { iterations: 5, ..Default::default() }).unwrap();
    assert_eq!(out.best.order.len(), 3);
    assert!(matches_product(&w, &identity_order(&w), &out.best.circuit));
}
