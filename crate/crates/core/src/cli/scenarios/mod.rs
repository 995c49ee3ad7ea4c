mod automorphisms;
mod discriminant;
mod invariants;
mod links;

use super::Scenario;

pub fn all() -> Vec<Scenario> {
    [discriminant::scenarios(), automorphisms::scenarios(), links::scenarios(), invariants::scenarios()]
        .into_iter()
        .flatten()
        .collect()
}
