//! Cross-checks on random tied braid closures.
//!
//! Every check is an exact equality in Z[A^±1, c]. Each generated diagram is
//! reproducible from its seed alone via [`suite_diagram`].

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::aj_closed::{aj3_closed, aj_closed, count_2tied, count_3tied_families};
use crate::aj_recursive::{
    aj_bracket, aj_bracket_recursive, gamma_contributions, nonzero_state_contributions, Gamma,
    ResolutionStrategy,
};
use crate::diagram::{Color, DiagramInput, DiagramSource, SmoothingType, TiedDiagram};
use crate::kauffman::kauffman_bracket;
use crate::laurent::TiedLaurent;

const WORD_ATTEMPTS: usize = 64;

fn braid_components(strands: usize, word: &[i32]) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &g in word {
        let p = g.unsigned_abs() as usize - 1;
        perm.swap(p, p + 1);
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for start in 0..strands {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

fn random_word(rng: &mut ChaCha8Rng, strands: usize, length: usize) -> Vec<i32> {
    (0..length)
        .map(|_| {
            let k = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect()
}

/// A random braid closure with a uniform surjective coloring onto
/// `1..=colors`. Words are redrawn until the closure has enough components;
/// if none does, free loops make up the difference.
pub fn random_tied_braid_input(seed: u64, strands: usize, length: usize, colors: u32) -> DiagramInput {
    assert!(strands >= 2, "a random braid needs at least two strands");
    assert!(colors >= 1, "at least one color");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let needed = colors as usize;
    let mut word = random_word(&mut rng, strands, length);
    for _ in 1..WORD_ATTEMPTS {
        if braid_components(strands, &word) >= needed {
            break;
        }
        word = random_word(&mut rng, strands, length);
    }
    let components = braid_components(strands, &word);
    let items = components.max(needed);
    let coloring = loop {
        let c: Vec<Color> = (0..items).map(|_| rng.gen_range(1..=colors)).collect();
        if c.iter().collect::<BTreeSet<_>>().len() == needed {
            break c;
        }
    };
    DiagramInput {
        source: DiagramSource::Braid { strands, word },
        colors: coloring[..components].to_vec(),
        loops: coloring[components..].to_vec(),
    }
}

pub fn random_tied_braid(seed: u64, strands: usize, length: usize, colors: u32) -> TiedDiagram {
    random_tied_braid_input(seed, strands, length, colors)
        .build()
        .expect("generated input is well formed")
}

/// The diagram the suite checks for a given per-diagram seed.
pub fn suite_diagram(seed: u64, max_m: usize) -> DiagramInput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed_5eed_5eed);
    let strands = rng.gen_range(2..=5);
    let length = rng.gen_range(0..=max_m);
    let colors = rng.gen_range(1..=3);
    random_tied_braid_input(seed, strands, length, colors)
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub count: usize,
    pub seed: u64,
    pub max_m: usize,
    /// Perturb one side of the closed-vs-recursive comparison, so that a
    /// correct build must report failures.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            count: 100,
            seed: 0,
            max_m: 8,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub index: usize,
    pub seed: u64,
    pub diagram_hash: String,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<CheckRecord>,
    /// Text serialization of every diagram with a failing check, by index.
    pub failing_diagrams: Vec<(usize, String)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.passed).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            write!(out, "{verdict} #{} seed={} hash={} {}", r.index, r.seed, r.diagram_hash, r.check).unwrap();
            if !r.detail.is_empty() {
                write!(out, ": {}", r.detail).unwrap();
            }
            out.push('\n');
        }
        for (index, text) in &self.failing_diagrams {
            writeln!(out, "--- diagram #{index}").unwrap();
            out.push_str(text);
        }
        writeln!(
            out,
            "{} checks, {} failed: {}",
            self.records.len(),
            self.failures(),
            if self.passed() { "ALL PASS" } else { "FAILURES" }
        )
        .unwrap();
        out
    }
}

pub fn diagram_hash(input: &DiagramInput) -> String {
    let digest = Sha256::digest(input.to_string().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

type Outcome = (&'static str, Result<(), String>);

fn expect_eq(a: &TiedLaurent, b: &TiedLaurent, what: &str) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a} != {b}"))
    }
}

fn all_ok(results: impl IntoIterator<Item = Result<(), String>>) -> Result<(), String> {
    results.into_iter().collect()
}

fn strategies(seed: u64) -> [ResolutionStrategy; 3] {
    [
        ResolutionStrategy::Canonical,
        ResolutionStrategy::FirstIllegal,
        ResolutionStrategy::Seeded(seed),
    ]
}

/// `⟨⟨D⟩⟩ = A⟨⟨D_0̄⟩⟩ + A^-1⟨⟨D_1̄⟩⟩` at monochromatic crossings and
/// `⟨⟨D⟩⟩ = δ(⟨⟨D_0⟩⟩ + ⟨⟨D_1⟩⟩) - ⟨⟨D_2⟩⟩` at dichromatic illegal ones.
pub fn check_skein(d: &TiedDiagram, at: usize, strategy: ResolutionStrategy) -> Result<(), String> {
    let value = aj_bracket(d, strategy);
    let child = |t| aj_bracket(&d.smooth(at, t).expect("illegal crossing"), strategy);
    let class = d.class(at).map_err(|e| e.to_string())?;
    let rhs = if class.is_dichromatic() {
        TiedLaurent::delta() * (child(SmoothingType::Zero) + child(SmoothingType::One)) - child(SmoothingType::Two)
    } else {
        child(SmoothingType::BarZero).shift_a(1) + child(SmoothingType::BarOne).shift_a(-1)
    };
    expect_eq(&value, &rhs, &format!("skein at crossing {at}"))
}

fn braid_variant(input: &DiagramInput, word: Vec<i32>, colors: Vec<Color>) -> TiedDiagram {
    let DiagramSource::Braid { strands, .. } = input.source else {
        unreachable!("suite diagrams are braids")
    };
    DiagramInput {
        source: DiagramSource::Braid { strands, word },
        colors,
        loops: input.loops.clone(),
    }
    .build()
    .expect("one color per closure component")
}

fn reidemeister_checks(input: &DiagramInput, d: &TiedDiagram, seed: u64) -> Vec<Outcome> {
    let DiagramSource::Braid { strands, ref word } = input.source else {
        return Vec::new();
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0123_4567_89ab_cdef);
    let value = aj_bracket(d, ResolutionStrategy::Canonical);
    let mut out = Vec::new();

    let at = rng.gen_range(0..=word.len());
    let k = rng.gen_range(1..strands as i32);
    let k = if rng.gen_bool(0.5) { k } else { -k };
    let mut w = word.clone();
    w.splice(at..at, [k, -k]);
    let ii = aj_bracket(&braid_variant(input, w, input.colors.clone()), ResolutionStrategy::Canonical);
    out.push(("reidemeister_ii", expect_eq(&value, &ii, &format!("insert {k} {} at {at}", -k))));

    if strands >= 3 {
        let i = rng.gen_range(1..strands as i32 - 1);
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let at = rng.gen_range(0..=word.len());
        let (a, b) = (s * i, s * (i + 1));
        let mut left = word.clone();
        left.splice(at..at, [a, b, a]);
        let mut right = word.clone();
        right.splice(at..at, [b, a, b]);
        // Both sides close up the same way, so one coloring serves both.
        let top = d.color_count().max(1);
        let colors: Vec<Color> = (0..braid_components(strands, &left)).map(|_| rng.gen_range(1..=top)).collect();
        let l = aj_bracket(&braid_variant(input, left, colors.clone()), ResolutionStrategy::Canonical);
        let r = aj_bracket(&braid_variant(input, right, colors), ResolutionStrategy::Canonical);
        out.push(("reidemeister_iii", expect_eq(&l, &r, &format!("{a} {b} {a} vs {b} {a} {b} at {at}"))));
    }
    out
}

fn count_check(d: &TiedDiagram, seed: u64) -> Option<Outcome> {
    let census = d.classify();
    let result = match d.color_count() {
        1 => {
            let (_, stats, _) = aj_bracket_recursive(d, ResolutionStrategy::Canonical);
            let expected = 1u128 << census.m();
            if stats.leaf_count == expected {
                Ok(())
            } else {
                Err(format!("{} leaves, expected {expected}", stats.leaf_count))
            }
        }
        2 => {
            let predicted = count_2tied(&census);
            all_ok(strategies(seed).map(|s| {
                let (_, stats, _) = aj_bracket_recursive(d, s);
                let measured = (stats.leaf_count, stats.states_with_colors(2), stats.states_with_colors(1));
                let want = (predicted.leaves, predicted.dichromatic_states, predicted.monochromatic_states);
                if measured == want {
                    Ok(())
                } else {
                    Err(format!("{s}: measured {measured:?}, predicted {want:?}"))
                }
            }))
        }
        3 => {
            let predicted = count_3tied_families(&census);
            let (_, stats, _) = aj_bracket_recursive(d, ResolutionStrategy::Canonical);
            let mut errors = Vec::new();
            for g in Gamma::ALL {
                let (leaves, states) = predicted.families[&g];
                let measured = (stats.gamma_leaves(g), stats.gamma_state_count(g));
                if measured != (leaves, states) {
                    errors.push(format!("{g}: measured {measured:?}, predicted {:?}", (leaves, states)));
                }
            }
            let corollary = (
                predicted.trichromatic_states,
                predicted.dichromatic_states,
                predicted.monochromatic_states,
            );
            let measured = (stats.states_with_colors(3), stats.states_with_colors(2), stats.states_with_colors(1));
            if measured != corollary {
                errors.push(format!("states by colors: measured {measured:?}, predicted {corollary:?}"));
            }
            if errors.is_empty() {
                Ok(())
            } else {
                Err(errors.join("; "))
            }
        }
        _ => return None,
    };
    Some(("count_formulas", result))
}

/// Run every applicable check on one diagram.
pub fn check_diagram(input: &DiagramInput, seed: u64, inject_fault: bool) -> Vec<Outcome> {
    let d = input.build().expect("suite diagrams are well formed");
    let mut out: Vec<Outcome> = Vec::new();
    let runs: Vec<_> = strategies(seed).into_iter().map(|s| (s, aj_bracket_recursive(&d, s))).collect();
    let value = runs[0].1 .0.clone();

    out.push((
        "strategy_independence",
        all_ok(runs[1..].iter().map(|(s, run)| expect_eq(&value, &run.0, &format!("canonical vs {s}")))),
    ));

    let reference = nonzero_state_contributions(&runs[0].1 .2);
    out.push((
        "state_contributions",
        all_ok(runs[1..].iter().map(|(s, run)| {
            if nonzero_state_contributions(&run.2) == reference {
                Ok(())
            } else {
                Err(format!("per-state totals differ between canonical and {s}"))
            }
        })),
    ));

    if d.color_count() <= 3 {
        let closed = aj_closed(&d).expect("at most 3 colors");
        let closed = if inject_fault { closed + TiedLaurent::one() } else { closed };
        out.push(("closed_vs_recursive", expect_eq(&closed, &value, "closed vs recursive")));
    }

    if d.color_count() == 3 {
        let g = aj3_closed(&d).expect("3 colors");
        let fam = gamma_contributions(&runs[0].1 .2);
        let get = |x: Gamma| fam.get(&x).cloned().unwrap_or_else(TiedLaurent::zero);
        out.push((
            "gamma_contributions",
            all_ok([
                expect_eq(&g.gamma1, &get(Gamma::G1), "Γ1"),
                expect_eq(&g.gamma2, &get(Gamma::G2), "Γ2"),
                expect_eq(&g.gamma3, &get(Gamma::G3), "Γ3"),
                expect_eq(&g.gamma4, &get(Gamma::G4), "Γ4"),
                expect_eq(&g.m_contribution, &(get(Gamma::G5) + get(Gamma::G6) + get(Gamma::G7)), "M"),
            ]),
        ));
    }

    out.extend(count_check(&d, seed));

    if d.color_count() == 1 {
        let k = kauffman_bracket(&d);
        let result = expect_eq(&value, &k, "AJ vs Kauffman").and_then(|()| {
            if value.contains_c() {
                Err(format!("{value} has c-terms"))
            } else {
                Ok(())
            }
        });
        out.push(("kauffman_degeneration", result));
    }

    let fresh = d.with_loop(d.color_count() + 1).expect("fresh color");
    out.push((
        "fresh_loop",
        expect_eq(&aj_bracket(&fresh, ResolutionStrategy::Canonical), &(&value * &TiedLaurent::c()), "D + fresh loop"),
    ));
    if d.color_count() > 0 {
        let same = d.with_loop(1).expect("existing color");
        out.push((
            "same_loop",
            expect_eq(
                &aj_bracket(&same, ResolutionStrategy::Canonical),
                &(&value * &TiedLaurent::loop_value()),
                "D + loop of color 1",
            ),
        ));
    }

    let illegal = d.illegal_crossings();
    let (mono, di): (Vec<usize>, Vec<usize>) =
        illegal.iter().partition(|&&i| !d.class(i).expect("active").is_dichromatic());
    if !mono.is_empty() {
        out.push(("skein_monochromatic", all_ok(mono.iter().map(|&i| check_skein(&d, i, ResolutionStrategy::Canonical)))));
    }
    if !di.is_empty() {
        out.push(("skein_dichromatic", all_ok(di.iter().map(|&i| check_skein(&d, i, ResolutionStrategy::Canonical)))));
    }

    out.extend(reidemeister_checks(input, &d, seed));
    out
}

fn diagram_seed(base: u64, index: usize) -> u64 {
    base.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index as u64)
}

type DiagramChecks = (Vec<CheckRecord>, Option<(usize, String)>);

pub fn verify_suite(config: &VerifyConfig) -> Report {
    let per_diagram: Vec<DiagramChecks> = (0..config.count)
        .into_par_iter()
        .map(|index| {
            let seed = diagram_seed(config.seed, index);
            let input = suite_diagram(seed, config.max_m);
            let hash = diagram_hash(&input);
            let records: Vec<CheckRecord> = check_diagram(&input, seed, config.inject_fault)
                .into_iter()
                .map(|(check, result)| CheckRecord {
                    index,
                    seed,
                    diagram_hash: hash.clone(),
                    check,
                    passed: result.is_ok(),
                    detail: result.err().unwrap_or_default(),
                })
                .collect();
            let failing = records.iter().any(|r| !r.passed).then(|| (index, input.to_string()));
            (records, failing)
        })
        .collect();

    let mut report = Report::default();
    for (records, failing) in per_diagram {
        report.records.extend(records);
        report.failing_diagrams.extend(failing);
    }
    report
}
