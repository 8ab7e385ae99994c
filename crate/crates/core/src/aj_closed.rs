//! Closed-form state sums for 2- and 3-tied diagrams, and the leaf and
//! state counts of their resolution trees.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::aj_recursive::Gamma;
use crate::diagram::{Color, CrossingCensus, Resolution, StateAssignment, TiedDiagram};
use crate::kauffman::kauffman_bracket;
use crate::laurent::TiedLaurent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("expected a {expected}-tied diagram, got {got} colors")]
    WrongColorCount { expected: u32, got: u32 },
    #[error("closed form supports at most 3 colors (diagram has {0})")]
    UnsupportedColorCount(u32),
    #[error("{0} crossings give too many terms to enumerate")]
    TooManyCrossings(usize),
}

/// `H_k = A^k + (-1)^(k+1) A^-k`.
pub fn h_poly(k: i64) -> TiedLaurent {
    let sign = if k.rem_euclid(2) == 0 { -1 } else { 1 };
    TiedLaurent::a_pow(k) + TiedLaurent::a_pow(-k).scale(&sign.into())
}

/// `S(a,b,c,d) = H_(a+d) H_(b+c) + (-1)^(a+b-1) A^(-a-b) H_c H_d`.
pub fn s_coeff(a: i64, b: i64, c: i64, d: i64) -> TiedLaurent {
    let sign = if (a + b - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let second = (h_poly(c) * h_poly(d)).shift_a(-a - b).scale(&sign.into());
    h_poly(a + d) * h_poly(b + c) + second
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBreakdown {
    pub gamma1: TiedLaurent,
    pub gamma2: TiedLaurent,
    pub gamma3: TiedLaurent,
    pub gamma4: TiedLaurent,
    /// Monochromatic leaves, families 5 to 7 together.
    pub m_contribution: TiedLaurent,
    pub total: TiedLaurent,
}

fn sign(n: usize) -> TiedLaurent {
    TiedLaurent::integer(if n.is_multiple_of(2) { 1 } else { -1 })
}

fn require_colors(d: &TiedDiagram, expected: u32) -> Result<(), ClosedFormError> {
    match d.color_count() {
        n if n == expected => Ok(()),
        n if n > 3 => Err(ClosedFormError::UnsupportedColorCount(n)),
        got => Err(ClosedFormError::WrongColorCount { expected, got }),
    }
}

fn all_assignments(domain: &[usize]) -> Result<impl Iterator<Item = StateAssignment> + '_, ClosedFormError> {
    if domain.len() >= 32 {
        return Err(ClosedFormError::TooManyCrossings(domain.len()));
    }
    Ok((0..1u64 << domain.len()).map(move |bits| StateAssignment::from_bits(domain, bits)))
}

fn bracket_of_color(d: &TiedDiagram, color: Color) -> TiedLaurent {
    kauffman_bracket(&d.subdiagram(&BTreeSet::from([color])).diagram)
}

/// Every pseudo-AJ-state `(σ, D_σ)`, `σ` ranging over `{0,1}^X`.
pub fn pseudo_states(d: &TiedDiagram) -> Result<Vec<(StateAssignment, TiedDiagram)>, ClosedFormError> {
    require_colors(d, 2)?;
    let x = d.classify().x_all();
    let states = all_assignments(&x)?
        .map(|s| {
            let ds = d.apply_assignment(&s).expect("X crossings are active");
            (s, ds)
        })
        .collect();
    Ok(states)
}

/// `Σ_σ H_(k_σ) ⟨D_σ⟩` over the pseudo-AJ-states of a 2-tied diagram.
pub fn pseudo_state_sum(d: &TiedDiagram) -> Result<TiedLaurent, ClosedFormError> {
    Ok(pseudo_states(d)?
        .iter()
        .map(|(s, ds)| h_poly(s.k_sigma()) * kauffman_bracket(ds))
        .sum())
}

/// Bracket of a 2-tied diagram: `(-1)^x ⟨D1⟩⟨D2⟩ c + Σ_σ H_(k_σ) ⟨D_σ⟩`.
pub fn aj2_closed(d: &TiedDiagram) -> Result<TiedLaurent, ClosedFormError> {
    require_colors(d, 2)?;
    let x = d.classify().x();
    let split = sign(x) * bracket_of_color(d, 1) * bracket_of_color(d, 2) * TiedLaurent::c();
    Ok(split + pseudo_state_sum(d)?)
}

/// Contribution of each leaf family of the canonical 3-tied tree.
pub fn aj3_closed(d: &TiedDiagram) -> Result<GammaBreakdown, ClosedFormError> {
    require_colors(d, 3)?;
    let census = d.classify();
    let (x12, x13, x23) = (census.x_ij(1, 2), census.x_ij(1, 3), census.x_ij(2, 3));
    let c = TiedLaurent::c();
    let brackets: Vec<TiedLaurent> = (1..=3).map(|i| bracket_of_color(d, i)).collect();
    let without = |dropped: Color| -> Result<TiedLaurent, ClosedFormError> {
        let keep: BTreeSet<Color> = (1..=3).filter(|&i| i != dropped).collect();
        pseudo_state_sum(&d.subdiagram(&keep).diagram)
    };

    let gamma1 = sign(census.x()) * c.pow(2) * &brackets[0] * &brackets[1] * &brackets[2];
    let gamma2 = sign(x13 + x23) * &c * &brackets[2] * without(3)?;
    let gamma3 = sign(x12 + x23) * &c * &brackets[1] * without(2)?;
    let gamma4 = sign(x12 + x13) * &c * &brackets[0] * without(1)?;

    let domains = [
        census.x_set(1, 2),
        census.x_set(1, 3),
        census.x_set(2, 3),
        census.y_set(2, 3),
    ];
    let joint: Vec<usize> = domains.iter().flatten().copied().collect();
    let mut m_contribution = TiedLaurent::zero();
    for s in all_assignments(&joint)? {
        let k: Vec<i64> = domains
            .iter()
            .map(|dom| dom.iter().map(|i| if s.choices[i] == Resolution::Zero { 1 } else { -1 }).sum())
            .collect();
        let coeff = s_coeff(k[0], k[1], k[2], k[3]);
        if coeff.is_zero() {
            continue;
        }
        let ds = d.apply_assignment(&s).expect("root crossings are active");
        m_contribution += coeff * kauffman_bracket(&ds);
    }

    let total = &gamma1 + &gamma2 + &gamma3 + &gamma4 + &m_contribution;
    Ok(GammaBreakdown {
        gamma1,
        gamma2,
        gamma3,
        gamma4,
        m_contribution,
        total,
    })
}

/// Closed-form bracket for up to 3 colors; 1 color is the Kauffman bracket.
pub fn aj_closed(d: &TiedDiagram) -> Result<TiedLaurent, ClosedFormError> {
    match d.color_count() {
        0 | 1 => Ok(kauffman_bracket(d)),
        2 => aj2_closed(d),
        3 => Ok(aj3_closed(d)?.total),
        n => Err(ClosedFormError::UnsupportedColorCount(n)),
    }
}

fn pow2(n: usize) -> u128 {
    1u128 << n
}

/// Predicted counts for a 2-tied tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoTiedCounts {
    pub leaves: u128,
    pub dichromatic_states: u128,
    pub monochromatic_states: u128,
}

/// `(2^z + x 2^m, 2^z, 2^m or 0)`.
pub fn count_2tied(census: &CrossingCensus) -> TwoTiedCounts {
    let (x, z, m) = (census.x(), census.z(), census.m());
    TwoTiedCounts {
        leaves: pow2(z) + x as u128 * pow2(m),
        dichromatic_states: pow2(z),
        monochromatic_states: if x > 0 { pow2(m) } else { 0 },
    }
}

/// Predicted counts for the canonical 3-tied tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTiedCounts {
    /// Family -> (leaves, states). Empty families report 0 states.
    pub families: BTreeMap<Gamma, (u128, u128)>,
    pub trichromatic_states: u128,
    pub dichromatic_states: u128,
    pub monochromatic_states: u128,
}

impl ThreeTiedCounts {
    pub fn leaves(&self) -> u128 {
        self.families.values().map(|f| f.0).sum()
    }
}

pub fn count_3tied_families(census: &CrossingCensus) -> ThreeTiedCounts {
    let (z, m) = (census.z(), census.m());
    let x = |i, j| census.x_ij(i, j) as u128;
    let xy = |i, j| census.x_ij(i, j) + census.y_ij(i, j);
    let states = |leaves: u128, n: u128| if leaves > 0 { n } else { 0 };

    let mut families = BTreeMap::new();
    families.insert(Gamma::G1, (pow2(z), pow2(z)));
    for (g, (i, j)) in [(Gamma::G2, (1, 2)), (Gamma::G3, (1, 3)), (Gamma::G4, (2, 3))] {
        let n = pow2(xy(i, j) + z);
        let leaves = x(i, j) * n;
        families.insert(g, (leaves, states(leaves, n)));
    }
    let y23 = census.y_ij(2, 3) as u128;
    for (g, factor) in [
        (Gamma::G5, x(1, 2) * x(1, 3)),
        (Gamma::G6, x(1, 2) * x(2, 3)),
        (Gamma::G7, x(1, 3) * y23),
    ] {
        let leaves = factor * pow2(m);
        families.insert(g, (leaves, states(leaves, pow2(m))));
    }

    let alpha = |i, j| u128::from(census.x_ij(i, j) > 0);
    let dichromatic_states =
        (alpha(1, 2) * pow2(xy(1, 2)) + alpha(1, 3) * pow2(xy(1, 3)) + alpha(2, 3) * pow2(xy(2, 3))) * pow2(z);
    let any_mono = [Gamma::G5, Gamma::G6, Gamma::G7].iter().any(|g| families[g].0 > 0);
    ThreeTiedCounts {
        families,
        trichromatic_states: pow2(z),
        dichromatic_states,
        monochromatic_states: if any_mono { pow2(m) } else { 0 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aj_recursive::{aj_bracket_recursive, gamma_contributions, ResolutionStrategy};

    fn p(s: &str) -> TiedLaurent {
        s.parse().unwrap()
    }

    fn braid(strands: usize, word: &[i32], colors: &[u32]) -> TiedDiagram {
        TiedDiagram::from_braid(strands, word, colors, &[]).unwrap()
    }

    /// The unsimplified three-term sum, written independently of `s_coeff`.
    fn s_expanded(a: i64, b: i64, c: i64, d: i64) -> TiedLaurent {
        let neg_a_inv = |k: i64| TiedLaurent::neg_a_pow(-k);
        h_poly(a) * h_poly(b) * TiedLaurent::a_pow(c + d)
            + h_poly(a) * neg_a_inv(b) * h_poly(c) * TiedLaurent::a_pow(d)
            + neg_a_inv(a) * h_poly(b) * TiedLaurent::a_pow(c) * h_poly(d)
    }

    #[test]
    fn h_examples() {
        assert!(h_poly(0).is_zero());
        assert_eq!(h_poly(1), TiedLaurent::delta());
        assert_eq!(h_poly(-2), p("A^-2 - A^2"));
        assert_eq!(h_poly(3), p("A^3 + A^-3"));
        for k in -16..=16 {
            let sign = if (k + 1i64).rem_euclid(2) == 0 { 1 } else { -1 };
            assert_eq!(h_poly(-k), h_poly(k).scale(&sign.into()));
            assert_eq!(h_poly(k), TiedLaurent::a_pow(k) - TiedLaurent::neg_a_pow(-k));
        }
    }

    #[test]
    fn s_examples() {
        assert!(s_coeff(0, 0, 0, 0).is_zero());
        assert_eq!(s_coeff(1, 1, 0, 0), TiedLaurent::delta().pow(2));
        assert_eq!(s_coeff(2, -1, 3, 1), s_expanded(2, -1, 3, 1));
    }

    #[test]
    fn two_tied_examples() {
        let unlink = TiedDiagram::unknot().with_loop(2).unwrap();
        assert_eq!(aj2_closed(&unlink).unwrap(), TiedLaurent::c());

        let hopf = braid(2, &[1, 1], &[1, 2]);
        let recursive = aj_bracket_recursive(&hopf, ResolutionStrategy::Canonical).0;
        assert_eq!(aj2_closed(&hopf).unwrap(), recursive);

        let mono = braid(2, &[1, 1], &[1, 1]);
        assert_eq!(
            aj2_closed(&mono),
            Err(ClosedFormError::WrongColorCount { expected: 2, got: 1 })
        );
    }

    #[test]
    fn x_free_diagram_splits() {
        let hopf = braid(2, &[1, 1], &[1, 2]);
        let legal = hopf.smooth(hopf.illegal_crossings()[0], crate::SmoothingType::Two).unwrap();
        assert_eq!(legal.classify().x(), 0);
        let expected = bracket_of_color(&legal, 1) * bracket_of_color(&legal, 2) * TiedLaurent::c();
        assert_eq!(aj2_closed(&legal).unwrap(), expected);
    }

    #[test]
    fn pseudo_state_examples() {
        let hopf = braid(2, &[1, 1], &[1, 2]);
        let states = pseudo_states(&hopf).unwrap();
        assert_eq!(states.len(), 2);
        assert!(states.iter().all(|(_, ds)| ds.color_count() == 1));

        let d = braid(3, &[1, 1, 2, 2], &[1, 2, 1]);
        let census = d.classify();
        assert_eq!(census.x(), 2);
        let mut ks: Vec<i64> = pseudo_states(&d).unwrap().iter().map(|(s, _)| s.k_sigma()).collect();
        ks.sort_unstable();
        assert_eq!(ks, vec![-2, 0, 0, 2]);
    }

    #[test]
    fn three_tied_examples() {
        let three = TiedDiagram::unknot().with_loop(2).unwrap().with_loop(3).unwrap();
        let g = aj3_closed(&three).unwrap();
        assert_eq!(g.total, TiedLaurent::c().pow(2));
        assert!(g.m_contribution.is_zero());

        let d = braid(3, &[1, 2, 1, -2, 1, 2], &[1, 2, 3]);
        let g = aj3_closed(&d).unwrap();
        let (value, _, records) = aj_bracket_recursive(&d, ResolutionStrategy::Canonical);
        assert_eq!(g.total, value);
        let fam = gamma_contributions(&records);
        let get = |x: Gamma| fam.get(&x).cloned().unwrap_or_else(TiedLaurent::zero);
        assert_eq!(g.gamma1, get(Gamma::G1));
        assert_eq!(g.gamma2, get(Gamma::G2));
        assert_eq!(g.gamma3, get(Gamma::G3));
        assert_eq!(g.gamma4, get(Gamma::G4));
        assert_eq!(g.m_contribution, get(Gamma::G5) + get(Gamma::G6) + get(Gamma::G7));
    }

    #[test]
    fn dispatcher() {
        let four = TiedDiagram::unknot()
            .with_loop(2)
            .and_then(|d| d.with_loop(3))
            .and_then(|d| d.with_loop(4))
            .unwrap();
        let e = aj_closed(&four).unwrap_err();
        assert_eq!(e, ClosedFormError::UnsupportedColorCount(4));
        assert!(e.to_string().contains("closed form supports at most 3 colors"));
        assert_eq!(aj3_closed(&four).unwrap_err(), ClosedFormError::UnsupportedColorCount(4));

        let trefoil = braid(2, &[1, 1, 1], &[1]);
        assert_eq!(aj_closed(&trefoil).unwrap(), kauffman_bracket(&trefoil));
    }

    fn census(x: &[((u32, u32), usize)], y: &[((u32, u32), usize)], z: usize) -> CrossingCensus {
        let mut next = 0;
        let mut take = |n: usize| {
            let s: BTreeSet<usize> = (next..next + n).collect();
            next += n;
            s
        };
        let x_sets = x.iter().map(|&(k, n)| (k, take(n))).collect();
        let y_sets = y.iter().map(|&(k, n)| (k, take(n))).collect();
        let z_sets = BTreeMap::from([(1, take(z))]);
        CrossingCensus { colors: 3, x_sets, y_sets, z_sets }
    }

    #[test]
    fn two_tied_counts() {
        let c = census(&[((1, 2), 1)], &[((1, 2), 1)], 0);
        assert_eq!(
            count_2tied(&c),
            TwoTiedCounts { leaves: 5, dichromatic_states: 1, monochromatic_states: 4 }
        );
        let c = census(&[((1, 2), 2)], &[((1, 2), 2)], 2);
        assert_eq!(
            count_2tied(&c),
            TwoTiedCounts { leaves: 132, dichromatic_states: 4, monochromatic_states: 64 }
        );
        let c = census(&[], &[((1, 2), 3)], 2);
        assert_eq!(
            count_2tied(&c),
            TwoTiedCounts { leaves: 4, dichromatic_states: 4, monochromatic_states: 0 }
        );
    }

    #[test]
    fn three_tied_counts() {
        let c = census(&[], &[((1, 2), 1), ((2, 3), 2)], 1);
        let counts = count_3tied_families(&c);
        assert_eq!(counts.families[&Gamma::G1], (2, 2));
        for g in &Gamma::ALL[1..] {
            assert_eq!(counts.families[g], (0, 0));
        }

        let c = census(&[((1, 2), 2), ((1, 3), 1), ((2, 3), 1)], &[((2, 3), 3)], 1);
        let counts = count_3tied_families(&c);
        let m = 2 + 1 + 1 + 3 + 1;
        assert_eq!(counts.families[&Gamma::G2], (2 << (2 + 1), 1 << (2 + 1)));
        assert_eq!(counts.families[&Gamma::G5].0, 2 << m);
        assert_eq!(counts.families[&Gamma::G7].0, 3 << m);
        assert_eq!(counts.dichromatic_states, ((1 << 2) + (1 << 1) + (1 << 4)) * 2);
        assert_eq!(counts.monochromatic_states, 1 << m);
    }
}
