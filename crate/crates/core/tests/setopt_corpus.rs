mod common;

use polyset::setopt::{solve, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn corpus_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut counts = [0usize; 3];
    for (i, p) in common::corpus().iter().enumerate() {
        match common::check_instance(p, &mut rng) {
            Ok(s) => counts[s as usize] += 1,
            Err(e) => panic!("instance {i}: {e}"),
        }
    }
    eprintln!("corpus statuses [infeasible, no_solution, solved]: {counts:?}");
    assert!(counts[Status::Solved as usize] >= 8, "corpus too thin: {counts:?}");
    assert!(counts[Status::NoSolution as usize] >= 2, "corpus too thin: {counts:?}");
}

#[test]
fn hand_built_no_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (i, p) in common::no_solution_instances().iter().enumerate() {
        let sol = solve(p);
        assert_eq!(sol.status, Status::NoSolution, "instance {i}");
        assert_eq!(sol.stats.minimizer_calls, 1, "instance {i} stops at the existence test");
        assert_eq!(common::three_way(p, &mut rng), (false, false, false), "instance {i}");
        assert_eq!(common::check_instance(p, &mut rng), Ok(Status::NoSolution), "instance {i}");
    }
}

#[test]
fn facet_lower_bound_on_a_cube() {
    // the 3-cube has 6 facets
    let pts: Vec<Vec<polyset::exact::Scalar>> = (0..8)
        .map(|m| polyset::exact::ivec(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    assert_eq!(common::certified_facets(&pts, 100, 200, &mut rng), Some(6));
    let flat = vec![polyset::exact::ivec(&[0, 0]), polyset::exact::ivec(&[1, 1]), polyset::exact::ivec(&[2, 2])];
    assert_eq!(common::certified_facets(&flat, 10, 10, &mut rng), None);
}
