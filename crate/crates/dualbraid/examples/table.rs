//! Prints |R|, Cat(W), the Poincaré polynomial and the number of maximal
//! chains of [1, c] for the given groups (default: the exceptional ones).
//!
//! cargo run --release --example table -- H3 G24 E6

use std::sync::Arc;
use std::time::Instant;

use dualbraid::catalog::{embedded_names, load_group, CatalogSource};
use dualbraid_core::interval::build_interval;
use dualbraid_core::ReflectionGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = embedded_names().map(String::from).collect();
    }
    for name in names {
        let start = Instant::now();
        let loaded = load_group(&name, &CatalogSource::Embedded)?;
        let group = Arc::new(ReflectionGroup::new(loaded.entry)?);
        let p = build_interval(&group)?;
        println!(
            "{:<6} |R| = {:<4} Cat = {:<6} Poin = {:?} chains = {} ({:.2} s)",
            group.name(),
            group.reflections().len(),
            p.len(),
            p.poincare_polynomial(),
            p.count_maximal_chains()?,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
