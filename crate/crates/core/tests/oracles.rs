mod common;

use common::*;

/// Families with `|W| ≤ 10⁴`.
const SMALL: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "D4", "D5", "I2(5)", "I2(6)", "I2(8)", "I2(12)",
    "G(3,3,3)", "G(3,3,4)", "G(4,4,3)", "G(4,4,4)", "G(5,5,3)", "G(5,5,4)",
];

#[test]
fn group_orders_match_degrees() {
    for name in SMALL {
        let (g, _) = family(name);
        check_group_order(&g).unwrap();
    }
}

#[test]
fn interval_matches_brute_force() {
    for name in SMALL {
        let (g, p) = family(name);
        check_interval_against_group(&g, &p).unwrap();
    }
}

#[test]
fn greedy_head_is_greatest_prefix() {
    for (i, name) in SMALL.iter().enumerate() {
        let (_, p) = family(name);
        check_greedy_prefix(&p, 1000, i as u64, 10_000).unwrap();
    }
}
