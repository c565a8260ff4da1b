//! Formula-space generators shared by the test suites and benchmarks: exact
//! enumeration by connective count and seeded random sampling.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::formula::Formula;

/// Leaves used by the generators: the given atoms plus absurdity.
fn leaves(atoms: &[&str]) -> Vec<Formula> {
    let mut v: Vec<Formula> = atoms.iter().map(|a| Formula::atom(*a)).collect();
    v.push(Formula::Falsum);
    v
}

/// Visit every propositional formula over `atoms` and `false` with at most
/// `max_connectives` connective nodes, in a fixed order: by connective count,
/// then negations of smaller formulas, then `&`, `|`, `->`, `<->` nodes by
/// left-size ascending and operand order.
pub fn for_each_formula(atoms: &[&str], max_connectives: usize, visit: &mut impl FnMut(&Formula)) {
    let mut levels: Vec<Vec<Formula>> = vec![leaves(atoms)];
    for f in &levels[0] {
        visit(f);
    }
    for k in 1..=max_connectives {
        let mut level = Vec::new();
        {
            let mut emit = |f: Formula| {
                visit(&f);
                level.push(f);
            };
            for f in &levels[k - 1] {
                emit(Formula::neg(f.clone()));
            }
            for op in 0..4usize {
                for left_size in 0..k {
                    let right_size = k - 1 - left_size;
                    for a in &levels[left_size] {
                        for b in &levels[right_size] {
                            emit(match op {
                                0 => Formula::and(a.clone(), b.clone()),
                                1 => Formula::or(a.clone(), b.clone()),
                                2 => Formula::imp(a.clone(), b.clone()),
                                _ => Formula::iff(a.clone(), b.clone()),
                            });
                        }
                    }
                }
            }
        }
        levels.push(level);
    }
}

/// Number of formulas [`for_each_formula`] visits.
pub fn formula_space_size(atom_count: usize, max_connectives: usize) -> u64 {
    let mut counts: Vec<u64> = vec![atom_count as u64 + 1];
    for k in 1..=max_connectives {
        let mut n = counts[k - 1];
        for left in 0..k {
            n += 4 * counts[left] * counts[k - 1 - left];
        }
        counts.push(n);
    }
    counts.iter().sum()
}

/// Seeded random propositional formulas with tree depth at most `max_depth`.
pub fn random_formulas(seed: u64, count: usize, atoms: &[&str], max_depth: usize) -> Vec<Formula> {
    let mut rng = StdRng::seed_from_u64(seed);
    let leaves = leaves(atoms);
    (0..count)
        .map(|_| random_formula(&mut rng, &leaves, max_depth))
        .collect()
}

fn random_formula(rng: &mut StdRng, leaves: &[Formula], depth: usize) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 5) {
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    match rng.gen_range(0..10) {
        0 | 1 | 2 => Formula::neg(random_formula(rng, leaves, depth - 1)),
        3 | 4 => Formula::and(
            random_formula(rng, leaves, depth - 1),
            random_formula(rng, leaves, depth - 1),
        ),
        5 | 6 => Formula::or(
            random_formula(rng, leaves, depth - 1),
            random_formula(rng, leaves, depth - 1),
        ),
        7 | 8 => Formula::imp(
            random_formula(rng, leaves, depth - 1),
            random_formula(rng, leaves, depth - 1),
        ),
        _ => Formula::iff(
            random_formula(rng, leaves, depth - 1),
            random_formula(rng, leaves, depth - 1),
        ),
    }
}
