//! Resolution trees: the bracket as a label-weighted sum over legal leaves.
//!
//! Each vertex with an illegal crossing is expanded: a monochromatic crossing
//! into its two classical smoothings (labels `A`, `A^-1`), a dichromatic one
//! into the two color-merging smoothings (label `δ = A + A^-1` each) and the
//! crossing change (label `-1`). Leaves are AJ-states. Trees are never stored;
//! leaves stream to a visitor.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Color, SmoothingType, StateKey, TiedDiagram};
use crate::laurent::TiedLaurent;

/// How the next crossing to smooth is picked at each vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResolutionStrategy {
    /// Root order X before Y before Z (pairs lexicographic, then index);
    /// dichromatic illegal crossings are always taken before monochromatic ones.
    Canonical,
    /// Lowest-index illegal crossing.
    FirstIllegal,
    /// Uniform choice, reproducible from the seed and the vertex path.
    Seeded(u64),
}

impl ResolutionStrategy {
    pub const ALL_FIXED: [ResolutionStrategy; 2] =
        [ResolutionStrategy::Canonical, ResolutionStrategy::FirstIllegal];
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown strategy {0:?} (expected canonical, first or seeded:<n>)")]
pub struct StrategyParseError(pub String);

impl FromStr for ResolutionStrategy {
    type Err = StrategyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(Self::Canonical),
            "first" => Ok(Self::FirstIllegal),
            _ => s
                .strip_prefix("seeded:")
                .and_then(|n| n.parse().ok())
                .map(Self::Seeded)
                .ok_or_else(|| StrategyParseError(s.to_string())),
        }
    }
}

impl fmt::Display for ResolutionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Canonical => f.write_str("canonical"),
            Self::FirstIllegal => f.write_str("first"),
            Self::Seeded(n) => write!(f, "seeded:{n}"),
        }
    }
}

/// Label on a tree edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeLabel {
    A,
    AInv,
    Delta,
    MinusOne,
}

impl EdgeLabel {
    pub fn value(self) -> TiedLaurent {
        match self {
            EdgeLabel::A => TiedLaurent::a(),
            EdgeLabel::AInv => TiedLaurent::a_pow(-1),
            EdgeLabel::Delta => TiedLaurent::delta(),
            EdgeLabel::MinusOne => TiedLaurent::integer(-1),
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::A => "A",
            EdgeLabel::AInv => "A^-1",
            EdgeLabel::Delta => "δ",
            EdgeLabel::MinusOne => "-1",
        })
    }
}

const MONO_CHILDREN: [(SmoothingType, EdgeLabel); 2] = [
    (SmoothingType::BarZero, EdgeLabel::A),
    (SmoothingType::BarOne, EdgeLabel::AInv),
];
const DI_CHILDREN: [(SmoothingType, EdgeLabel); 3] = [
    (SmoothingType::Zero, EdgeLabel::Delta),
    (SmoothingType::One, EdgeLabel::Delta),
    (SmoothingType::Two, EdgeLabel::MinusOne),
];

/// Leaf families of a 3-tied tree, by the set of root color pairs merged
/// along the path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gamma {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
}

impl Gamma {
    pub const ALL: [Gamma; 7] = [
        Gamma::G1,
        Gamma::G2,
        Gamma::G3,
        Gamma::G4,
        Gamma::G5,
        Gamma::G6,
        Gamma::G7,
    ];

    pub fn from_merges(merges: &[(Color, Color)]) -> Option<Gamma> {
        let set: BTreeSet<(Color, Color)> = merges.iter().copied().collect();
        if set.len() != merges.len() {
            return None;
        }
        let pairs: Vec<(Color, Color)> = set.into_iter().collect();
        Some(match pairs.as_slice() {
            [] => Gamma::G1,
            [(1, 2)] => Gamma::G2,
            [(1, 3)] => Gamma::G3,
            [(2, 3)] => Gamma::G4,
            [(1, 2), (1, 3)] => Gamma::G5,
            [(1, 2), (2, 3)] => Gamma::G6,
            [(1, 3), (2, 3)] => Gamma::G7,
            _ => return None,
        })
    }

    /// 1-based family number.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    /// Families whose leaves are monochromatic.
    pub fn is_monochromatic(self) -> bool {
        matches!(self, Gamma::G5 | Gamma::G6 | Gamma::G7)
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ{}", self.number())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafRecord {
    /// Product of the edge labels from the root.
    pub weight: TiedLaurent,
    pub labels: Vec<EdgeLabel>,
    pub state_key: StateKey,
    pub value: TiedLaurent,
    /// Root color pairs of the crossings smoothed with type 0 or 1, in path order.
    pub merge_trace: Vec<(Color, Color)>,
    pub root_colors: u32,
    pub leaf_colors: u32,
}

impl LeafRecord {
    pub fn contribution(&self) -> TiedLaurent {
        &self.weight * &self.value
    }

    /// Family of the leaf, for 3-tied roots only.
    pub fn gamma(&self) -> Option<Gamma> {
        if self.root_colors == 3 {
            Gamma::from_merges(&self.merge_trace)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub leaf_count: u128,
    /// Number of colors in the leaf -> distinct states.
    pub distinct_states_by_color_count: BTreeMap<u32, u128>,
    /// Leaves per family; empty unless the root has 3 colors.
    pub gamma_counts: BTreeMap<Gamma, u128>,
    /// Distinct states per family; empty unless the root has 3 colors.
    pub gamma_states: BTreeMap<Gamma, u128>,
}

impl TreeStats {
    pub fn states_with_colors(&self, colors: u32) -> u128 {
        self.distinct_states_by_color_count.get(&colors).copied().unwrap_or(0)
    }

    pub fn gamma_leaves(&self, g: Gamma) -> u128 {
        self.gamma_counts.get(&g).copied().unwrap_or(0)
    }

    pub fn gamma_state_count(&self, g: Gamma) -> u128 {
        self.gamma_states.get(&g).copied().unwrap_or(0)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Root data shared by every vertex of one tree.
struct Plan {
    strategy: ResolutionStrategy,
    /// Canonical rank per root crossing.
    rank: Vec<usize>,
    root_pair: Vec<Option<(Color, Color)>>,
    root_colors: u32,
}

impl Plan {
    fn new(d: &TiedDiagram, strategy: ResolutionStrategy) -> Plan {
        let census = d.classify();
        let mut rank = vec![usize::MAX; d.crossings().len()];
        let order = census
            .x_sets
            .values()
            .chain(census.y_sets.values())
            .chain(census.z_sets.values())
            .flatten();
        for (r, &i) in order.enumerate() {
            rank[i] = r;
        }
        let root_pair = (0..d.crossings().len())
            .map(|i| d.class(i).ok().and_then(|c| c.pair()))
            .collect();
        Plan {
            strategy,
            rank,
            root_pair,
            root_colors: d.color_count(),
        }
    }

    fn choose(&self, d: &TiedDiagram, path: u64) -> Option<usize> {
        let illegal = d.illegal_crossings();
        if illegal.is_empty() {
            return None;
        }
        Some(match self.strategy {
            ResolutionStrategy::FirstIllegal => illegal[0],
            ResolutionStrategy::Canonical => *illegal
                .iter()
                .min_by_key(|&&i| (!d.class(i).expect("active").is_dichromatic(), self.rank[i]))
                .expect("nonempty"),
            ResolutionStrategy::Seeded(_) => {
                let mut rng = ChaCha8Rng::seed_from_u64(path);
                illegal[rng.gen_range(0..illegal.len())]
            }
        })
    }

    fn root_path(&self) -> u64 {
        match self.strategy {
            ResolutionStrategy::Seeded(seed) => splitmix64(seed),
            _ => 0,
        }
    }

    fn children(&self, d: &TiedDiagram, index: usize) -> &'static [(SmoothingType, EdgeLabel)] {
        if d.class(index).expect("chosen crossing is active").is_dichromatic() {
            &DI_CHILDREN
        } else {
            &MONO_CHILDREN
        }
    }
}

fn child_path(parent: u64, child: usize) -> u64 {
    splitmix64(parent ^ (child as u64 + 1).wrapping_mul(0x2545_f491_4f6c_dd1d))
}

struct Walk<'a, F> {
    plan: &'a Plan,
    visit: F,
    labels: Vec<EdgeLabel>,
    trace: Vec<(Color, Color)>,
}

impl<F: FnMut(LeafRecord)> Walk<'_, F> {
    fn expand(&mut self, d: &TiedDiagram, weight: &TiedLaurent, path: u64) {
        let Some(index) = self.plan.choose(d, path) else {
            let record = LeafRecord {
                weight: weight.clone(),
                labels: self.labels.clone(),
                state_key: d.state_key(),
                value: d.evaluate_legal_diagram().expect("leaf has no illegal crossings"),
                merge_trace: self.trace.clone(),
                root_colors: self.plan.root_colors,
                leaf_colors: d.color_count(),
            };
            (self.visit)(record);
            return;
        };
        for (k, &(t, label)) in self.plan.children(d, index).iter().enumerate() {
            let child = d.smooth(index, t).expect("legal smoothing of an illegal crossing");
            let merges = matches!(t, SmoothingType::Zero | SmoothingType::One);
            if merges {
                self.trace.push(self.plan.root_pair[index].expect("dichromatic at the root"));
            }
            self.labels.push(label);
            let w = weight * &label.value();
            self.expand(&child, &w, child_path(path, k));
            self.labels.pop();
            if merges {
                self.trace.pop();
            }
        }
    }
}

/// Stream every leaf of the resolution tree of `d` to `visit`, depth first.
pub fn walk_leaves(d: &TiedDiagram, strategy: ResolutionStrategy, visit: impl FnMut(LeafRecord)) {
    let plan = Plan::new(d, strategy);
    let mut walk = Walk {
        plan: &plan,
        visit,
        labels: Vec::new(),
        trace: Vec::new(),
    };
    walk.expand(d, &TiedLaurent::one(), plan.root_path());
}

/// Bracket only, without keeping any leaf.
pub fn aj_bracket(d: &TiedDiagram, strategy: ResolutionStrategy) -> TiedLaurent {
    let mut total = TiedLaurent::zero();
    walk_leaves(d, strategy, |leaf| total += leaf.contribution());
    total
}

pub fn aj_bracket_recursive(
    d: &TiedDiagram,
    strategy: ResolutionStrategy,
) -> (TiedLaurent, TreeStats, Vec<LeafRecord>) {
    let mut records = Vec::new();
    walk_leaves(d, strategy, |leaf| records.push(leaf));
    let total = records.iter().map(LeafRecord::contribution).sum();
    let stats = census(&records);
    (total, stats, records)
}

pub fn census(records: &[LeafRecord]) -> TreeStats {
    let mut by_colors: BTreeMap<u32, HashSet<&StateKey>> = BTreeMap::new();
    let mut by_gamma: BTreeMap<Gamma, HashSet<&StateKey>> = BTreeMap::new();
    let mut gamma_counts = BTreeMap::new();
    for r in records {
        by_colors.entry(r.leaf_colors).or_default().insert(&r.state_key);
        if let Some(g) = r.gamma() {
            *gamma_counts.entry(g).or_insert(0u128) += 1;
            by_gamma.entry(g).or_default().insert(&r.state_key);
        }
    }
    TreeStats {
        leaf_count: records.len() as u128,
        distinct_states_by_color_count: by_colors.into_iter().map(|(k, s)| (k, s.len() as u128)).collect(),
        gamma_counts,
        gamma_states: by_gamma.into_iter().map(|(g, s)| (g, s.len() as u128)).collect(),
    }
}

/// Total contribution per AJ-state. States whose contributions cancel are
/// kept with value zero.
pub fn per_state_contribution(records: &[LeafRecord]) -> BTreeMap<StateKey, TiedLaurent> {
    let mut out: BTreeMap<StateKey, TiedLaurent> = BTreeMap::new();
    for r in records {
        *out.entry(r.state_key.clone()).or_insert_with(TiedLaurent::zero) += r.contribution();
    }
    out
}

/// [`per_state_contribution`] without the zero totals.
pub fn nonzero_state_contributions(records: &[LeafRecord]) -> BTreeMap<StateKey, TiedLaurent> {
    let mut out = per_state_contribution(records);
    out.retain(|_, v| !v.is_zero());
    out
}

/// Sum of contributions per family of a 3-tied tree.
pub fn gamma_contributions(records: &[LeafRecord]) -> BTreeMap<Gamma, TiedLaurent> {
    let mut out: BTreeMap<Gamma, TiedLaurent> = BTreeMap::new();
    for r in records {
        if let Some(g) = r.gamma() {
            *out.entry(g).or_insert_with(TiedLaurent::zero) += r.contribution();
        }
    }
    out
}

fn node_label(d: &TiedDiagram) -> String {
    let cx = d.complexity();
    let census = d.classify();
    let mut label = format!("({}, {})", cx.total, cx.illegal);
    for ((i, j), s) in &census.x_sets {
        write!(label, "\\nx{i}{j}={}", s.len()).unwrap();
    }
    for ((i, j), s) in &census.y_sets {
        write!(label, "\\ny{i}{j}={}", s.len()).unwrap();
    }
    for (i, s) in &census.z_sets {
        write!(label, "\\nz{i}={}", s.len()).unwrap();
    }
    label
}

/// The resolution tree as a DOT digraph, cut off below `max_depth`.
pub fn export_dot(d: &TiedDiagram, strategy: ResolutionStrategy, max_depth: usize) -> String {
    struct Dot<'a> {
        plan: &'a Plan,
        max_depth: usize,
        out: String,
        next_id: usize,
    }

    impl Dot<'_> {
        fn node(&mut self, d: &TiedDiagram, depth: usize, path: u64) -> usize {
            let id = self.next_id;
            self.next_id += 1;
            let label = node_label(d);
            let chosen = self.plan.choose(d, path);
            match chosen {
                None => writeln!(self.out, "  n{id} [label=\"{label}\", shape=box];").unwrap(),
                Some(_) if depth >= self.max_depth => {
                    writeln!(self.out, "  n{id} [label=\"{label}\\n...\", style=dashed];").unwrap()
                }
                Some(index) => {
                    writeln!(self.out, "  n{id} [label=\"{label}\\nsmooth {index}\"];").unwrap();
                    for (k, &(t, edge)) in self.plan.children(d, index).iter().enumerate() {
                        let child = d.smooth(index, t).expect("legal smoothing");
                        let cid = self.node(&child, depth + 1, child_path(path, k));
                        writeln!(self.out, "  n{id} -> n{cid} [label=\"{edge}\"];").unwrap();
                    }
                }
            }
            id
        }
    }

    let plan = Plan::new(d, strategy);
    let mut dot = Dot {
        plan: &plan,
        max_depth,
        out: String::from("digraph resolution_tree {\n"),
        next_id: 0,
    };
    dot.node(d, 0, plan.root_path());
    dot.out.push_str("}\n");
    dot.out
}
