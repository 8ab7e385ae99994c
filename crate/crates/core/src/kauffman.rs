//! Classical Kauffman bracket by exhaustive state sum, colors ignored.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::diagram::{DiagramError, StateAssignment, TiedDiagram};
use crate::laurent::TiedLaurent;
use crate::union_find::UnionFind;

/// Whether a bracket was computed from at least one curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketStatus {
    Evaluated,
    /// The diagram has no components; the value 1 is a convention.
    EmptyDiagram,
}

/// `⟨D⟩ = Σ_s A^{k_s} (-A^2 - A^-2)^{circles(s) - 1}` over all `2^m` states.
pub fn kauffman_bracket(d: &TiedDiagram) -> TiedLaurent {
    kauffman_bracket_with_status(d).0
}

pub fn kauffman_bracket_with_status(d: &TiedDiagram) -> (TiedLaurent, BracketStatus) {
    if d.is_empty() {
        return (TiedLaurent::one(), BracketStatus::EmptyDiagram);
    }

    // Tombstones are fixed arcs shared by every state.
    let mut base = UnionFind::new(d.edge_count());
    let mut active = Vec::new();
    for (i, c) in d.crossings().iter().enumerate() {
        match c.root_resolution() {
            Some(_) => {
                let s = c.root_slots();
                let pairs = match c.root_resolution() {
                    Some(crate::diagram::Resolution::Zero) => [(s[0], s[1]), (s[2], s[3])],
                    _ => [(s[0], s[3]), (s[1], s[2])],
                };
                for (a, b) in pairs {
                    base.union(a, b);
                }
            }
            None => active.push(i),
        }
    }
    let m = active.len();
    assert!(m < 64, "state sum over {m} crossings is out of reach");
    let slots: Vec<[usize; 4]> = active.iter().map(|&i| d.crossings()[i].slots()).collect();
    let loops = d.free_loops().len();

    // (A exponent, circle count) -> number of states.
    let mut tally: BTreeMap<(i64, usize), u64> = BTreeMap::new();
    for bits in 0u64..(1u64 << m) {
        let mut uf = base.clone();
        for (b, s) in slots.iter().enumerate() {
            if bits >> b & 1 == 0 {
                uf.union(s[0], s[1]);
                uf.union(s[2], s[3]);
            } else {
                uf.union(s[0], s[3]);
                uf.union(s[1], s[2]);
            }
        }
        let ones = bits.count_ones() as i64;
        let a_exp = m as i64 - 2 * ones;
        *tally.entry((a_exp, uf.sets() + loops)).or_default() += 1;
    }

    let loop_value = TiedLaurent::loop_value();
    let mut powers: Vec<TiedLaurent> = vec![TiedLaurent::one()];
    let mut total = TiedLaurent::zero();
    for ((a_exp, circles), count) in tally {
        while powers.len() < circles {
            let next = powers.last().expect("nonempty") * &loop_value;
            powers.push(next);
        }
        total += powers[circles - 1].shift_a(a_exp).scale(&BigInt::from(count));
    }
    (total, BracketStatus::Evaluated)
}

/// `⟨D_s⟩`: the Kauffman bracket after smoothing the crossings in `s`.
pub fn bracket_of_restriction(d: &TiedDiagram, s: &StateAssignment) -> Result<TiedLaurent, DiagramError> {
    Ok(kauffman_bracket(&d.apply_assignment(s)?))
}
