//! Tied link diagrams: planar crossing data plus a coloring of components.
//!
//! A diagram is stored as a set of edges (arcs between crossing slots) and a
//! list of crossings, each holding four edge labels in counterclockwise order
//! with the under-strand on slots 0 and 2. Smoothing a crossing leaves a
//! tombstone in place that records which slots were joined, so crossing
//! indices stay fixed for the lifetime of every diagram derived from a root.

mod build;
mod text;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::TiedLaurent;
use crate::union_find::UnionFind;

pub use text::{parse_diagram, DiagramInput, DiagramSource, ParseError};

/// Component color. Used colors are always exactly `1..=n`.
pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i32, strands: usize },
    #[error("expected {expected} colors (one per component), got {got}")]
    ColorCount { expected: usize, got: usize },
    #[error("colors must be positive integers")]
    ZeroColor,
    #[error("arc label {label} occurs {count} times; every label must occur exactly twice")]
    DanglingArc { label: i64, count: usize },
    #[error("crossing {0} does not exist")]
    CrossingOutOfRange(usize),
    #[error("crossing {0} has already been smoothed")]
    CrossingNotActive(usize),
    #[error("type-2 smoothing needs a dichromatic crossing, crossing {0} is monochromatic")]
    TwoOnMonochromatic(usize),
    #[error("bar smoothings need a monochromatic crossing, crossing {0} is dichromatic")]
    BarOnDichromatic(usize),
    #[error("diagram still has {0} illegal crossings")]
    NotLegal(usize),
    #[error("loop color {color} is neither used nor the next fresh color {fresh}")]
    LoopColor { color: Color, fresh: Color },
}

/// One of the two ways to join the four slots of a crossing.
///
/// `Zero` joins slots 0-1 and 2-3, `One` joins 0-3 and 1-2, both read in the
/// crossing's current frame (under-strand on 0 and 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Resolution {
    Zero,
    One,
}

impl Resolution {
    pub fn opposite(self) -> Self {
        match self {
            Resolution::Zero => Resolution::One,
            Resolution::One => Resolution::Zero,
        }
    }

    fn joins(self) -> [(usize, usize); 2] {
        match self {
            Resolution::Zero => [(0, 1), (2, 3)],
            Resolution::One => [(0, 3), (1, 2)],
        }
    }
}

/// The five local moves of the resolution trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmoothingType {
    Zero,
    One,
    Two,
    BarZero,
    BarOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum CrossingStatus {
    Active { flipped: bool },
    /// Resolution expressed in the frame the crossing had at construction.
    Smoothed(Resolution),
}

/// A crossing (or the tombstone of a smoothed one).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    root_slots: [usize; 4],
    status: CrossingStatus,
}

impl Crossing {
    fn new(slots: [usize; 4]) -> Self {
        Self {
            root_slots: slots,
            status: CrossingStatus::Active { flipped: false },
        }
    }

    pub fn is_active(&self) -> bool {
        matches!(self.status, CrossingStatus::Active { .. })
    }

    /// True when a crossing change has swapped over and under.
    pub fn is_flipped(&self) -> bool {
        matches!(self.status, CrossingStatus::Active { flipped: true })
    }

    /// Slot edges in the current frame.
    pub fn slots(&self) -> [usize; 4] {
        let s = self.root_slots;
        if self.is_flipped() {
            [s[1], s[2], s[3], s[0]]
        } else {
            s
        }
    }

    /// Slot edges in the frame the crossing had at construction.
    pub fn root_slots(&self) -> [usize; 4] {
        self.root_slots
    }

    pub fn under_edges(&self) -> (usize, usize) {
        let s = self.slots();
        (s[0], s[2])
    }

    pub fn over_edges(&self) -> (usize, usize) {
        let s = self.slots();
        (s[1], s[3])
    }

    /// For a smoothed crossing, the resolution in the construction frame.
    pub fn root_resolution(&self) -> Option<Resolution> {
        match self.status {
            CrossingStatus::Smoothed(r) => Some(r),
            CrossingStatus::Active { .. } => None,
        }
    }

    /// Construction-frame resolution equivalent to `r` in the current frame.
    fn to_root_frame(&self, r: Resolution) -> Resolution {
        if self.is_flipped() {
            r.opposite()
        } else {
            r
        }
    }

    /// Pairs of root slots that lie on a common curve through this crossing
    /// (strands when active, joined arcs when smoothed).
    fn connections(&self) -> [(usize, usize); 2] {
        let s = self.root_slots;
        match self.status {
            CrossingStatus::Active { .. } => [(s[0], s[2]), (s[1], s[3])],
            CrossingStatus::Smoothed(r) => r.joins().map(|(a, b)| (s[a], s[b])),
        }
    }
}

/// Classification of an active crossing by the colors of its strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingClass {
    /// Both strands have color `i`.
    MonoIllegal(Color),
    /// Over-strand color `i` below under-strand color `j`.
    DiIllegal(Color, Color),
    /// Under-strand color `i` below over-strand color `j`.
    DiLegal(Color, Color),
}

impl CrossingClass {
    pub fn is_illegal(self) -> bool {
        !matches!(self, CrossingClass::DiLegal(..))
    }

    pub fn is_dichromatic(self) -> bool {
        !matches!(self, CrossingClass::MonoIllegal(_))
    }

    /// The color pair `(i, j)` with `i < j` of a dichromatic crossing.
    pub fn pair(self) -> Option<(Color, Color)> {
        match self {
            CrossingClass::MonoIllegal(_) => None,
            CrossingClass::DiIllegal(i, j) | CrossingClass::DiLegal(i, j) => Some((i, j)),
        }
    }
}

/// The partition of the active crossings into the sets X_{i,j}, Y_{i,j}, Z_i.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingCensus {
    pub colors: u32,
    pub x_sets: BTreeMap<(Color, Color), BTreeSet<usize>>,
    pub y_sets: BTreeMap<(Color, Color), BTreeSet<usize>>,
    pub z_sets: BTreeMap<Color, BTreeSet<usize>>,
}

impl CrossingCensus {
    pub fn x_ij(&self, i: Color, j: Color) -> usize {
        self.x_sets.get(&(i, j)).map_or(0, BTreeSet::len)
    }

    pub fn y_ij(&self, i: Color, j: Color) -> usize {
        self.y_sets.get(&(i, j)).map_or(0, BTreeSet::len)
    }

    pub fn z_i(&self, i: Color) -> usize {
        self.z_sets.get(&i).map_or(0, BTreeSet::len)
    }

    pub fn x(&self) -> usize {
        self.x_sets.values().map(BTreeSet::len).sum()
    }

    pub fn y(&self) -> usize {
        self.y_sets.values().map(BTreeSet::len).sum()
    }

    pub fn z(&self) -> usize {
        self.z_sets.values().map(BTreeSet::len).sum()
    }

    pub fn m(&self) -> usize {
        self.x() + self.y() + self.z()
    }

    pub fn x_set(&self, i: Color, j: Color) -> Vec<usize> {
        self.x_sets.get(&(i, j)).map_or_else(Vec::new, |s| s.iter().copied().collect())
    }

    pub fn y_set(&self, i: Color, j: Color) -> Vec<usize> {
        self.y_sets.get(&(i, j)).map_or_else(Vec::new, |s| s.iter().copied().collect())
    }

    /// All dichromatic illegal crossings, in index order.
    pub fn x_all(&self) -> Vec<usize> {
        let all: BTreeSet<usize> = self.x_sets.values().flatten().copied().collect();
        all.into_iter().collect()
    }
}

/// The pair (total crossings, illegal crossings), ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Complexity {
    pub total: usize,
    pub illegal: usize,
}

/// A choice of 0/1 smoothing for a subset of crossings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateAssignment {
    pub choices: BTreeMap<usize, Resolution>,
}

impl StateAssignment {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Assignment on `domain` whose bit `b` of `bits` selects `One` for `domain[b]`.
    pub fn from_bits(domain: &[usize], bits: u64) -> Self {
        let choices = domain
            .iter()
            .enumerate()
            .map(|(b, &c)| {
                let r = if bits >> b & 1 == 1 { Resolution::One } else { Resolution::Zero };
                (c, r)
            })
            .collect();
        Self { choices }
    }

    /// `#σ⁻¹(0) − #σ⁻¹(1)`.
    pub fn k_sigma(&self) -> i64 {
        self.choices
            .values()
            .map(|r| match r {
                Resolution::Zero => 1,
                Resolution::One => -1,
            })
            .sum()
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// Union of assignments with disjoint domains (later entries win on overlap).
    pub fn union(&self, other: &StateAssignment) -> StateAssignment {
        let mut choices = self.choices.clone();
        choices.extend(other.choices.iter().map(|(&c, &r)| (c, r)));
        Self { choices }
    }
}

impl FromIterator<(usize, Resolution)> for StateAssignment {
    fn from_iter<I: IntoIterator<Item = (usize, Resolution)>>(iter: I) -> Self {
        Self { choices: iter.into_iter().collect() }
    }
}

/// `#σ⁻¹(0̄) − #σ⁻¹(1̄)`; non-bar entries are ignored.
pub fn e_count(assignment: &BTreeMap<usize, SmoothingType>) -> i64 {
    assignment
        .values()
        .map(|t| match t {
            SmoothingType::BarZero => 1,
            SmoothingType::BarOne => -1,
            _ => 0,
        })
        .sum()
}

/// Final fate of one root crossing in a leaf diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FinalResolution {
    Zero,
    One,
    Kept,
}

/// Identity of a diagram derived from a root: how every root crossing ended
/// up plus the final color of every edge and free loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateKey {
    pub crossings: Vec<FinalResolution>,
    pub edge_colors: Vec<Color>,
    pub free_loops: Vec<Color>,
}

/// Result of [`TiedDiagram::subdiagram`].
#[derive(Clone, Debug)]
pub struct Subdiagram {
    pub diagram: TiedDiagram,
    /// Old color to new color for every kept color.
    pub color_map: BTreeMap<Color, Color>,
    /// Old crossing index to new index for every surviving crossing.
    pub crossing_map: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TiedDiagram {
    crossings: Vec<Crossing>,
    edge_colors: Vec<Color>,
    free_loops: Vec<Color>,
    colors: u32,
}

impl TiedDiagram {
    /// The diagram with no components at all.
    pub fn empty() -> Self {
        Self {
            crossings: Vec::new(),
            edge_colors: Vec::new(),
            free_loops: Vec::new(),
            colors: 0,
        }
    }

    /// A single crossingless circle of color 1.
    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
            edge_colors: Vec::new(),
            free_loops: vec![1],
            colors: 1,
        }
    }

    /// Every crossing slot, including tombstones of smoothed crossings.
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, index: usize) -> Option<&Crossing> {
        self.crossings.get(index)
    }

    pub fn active_crossings(&self) -> impl Iterator<Item = usize> + '_ {
        self.crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_active())
            .map(|(i, _)| i)
    }

    /// Number of crossings that have not been smoothed.
    pub fn crossing_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_active()).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_colors.len()
    }

    pub fn edge_color(&self, edge: usize) -> Color {
        self.edge_colors[edge]
    }

    pub fn free_loops(&self) -> &[Color] {
        &self.free_loops
    }

    pub fn color_count(&self) -> u32 {
        self.colors
    }

    pub fn is_empty(&self) -> bool {
        self.edge_colors.is_empty() && self.free_loops.is_empty()
    }

    fn active(&self, index: usize) -> Result<&Crossing, DiagramError> {
        let c = self
            .crossings
            .get(index)
            .ok_or(DiagramError::CrossingOutOfRange(index))?;
        if c.is_active() {
            Ok(c)
        } else {
            Err(DiagramError::CrossingNotActive(index))
        }
    }

    /// `(over color, under color)` of an active crossing.
    pub fn strand_colors(&self, index: usize) -> Result<(Color, Color), DiagramError> {
        let c = self.active(index)?;
        Ok((self.edge_colors[c.over_edges().0], self.edge_colors[c.under_edges().0]))
    }

    pub fn class(&self, index: usize) -> Result<CrossingClass, DiagramError> {
        let (over, under) = self.strand_colors(index)?;
        Ok(match over.cmp(&under) {
            std::cmp::Ordering::Equal => CrossingClass::MonoIllegal(over),
            std::cmp::Ordering::Less => CrossingClass::DiIllegal(over, under),
            std::cmp::Ordering::Greater => CrossingClass::DiLegal(under, over),
        })
    }

    pub fn classify(&self) -> CrossingCensus {
        let mut census = CrossingCensus {
            colors: self.colors,
            ..CrossingCensus::default()
        };
        for i in self.active_crossings() {
            match self.class(i).expect("active crossing") {
                CrossingClass::MonoIllegal(c) => census.z_sets.entry(c).or_default().insert(i),
                CrossingClass::DiIllegal(a, b) => census.x_sets.entry((a, b)).or_default().insert(i),
                CrossingClass::DiLegal(a, b) => census.y_sets.entry((a, b)).or_default().insert(i),
            };
        }
        census
    }

    pub fn illegal_crossings(&self) -> Vec<usize> {
        self.active_crossings()
            .filter(|&i| self.class(i).is_ok_and(CrossingClass::is_illegal))
            .collect()
    }

    pub fn complexity(&self) -> Complexity {
        Complexity {
            total: self.crossing_count(),
            illegal: self.illegal_crossings().len(),
        }
    }

    /// Curves through all edges: `(component id per edge, number of edge components)`,
    /// ids ordered by least edge label.
    fn edge_components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.edge_colors.len());
        for c in &self.crossings {
            for (a, b) in c.connections() {
                uf.union(a, b);
            }
        }
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut labels = Vec::with_capacity(self.edge_colors.len());
        for e in 0..self.edge_colors.len() {
            let root = uf.find(e);
            let next = ids.len();
            labels.push(*ids.entry(root).or_insert(next));
        }
        let n = ids.len();
        (labels, n)
    }

    /// Number of closed curves, free loops included.
    pub fn component_count(&self) -> usize {
        self.edge_components().1 + self.free_loops.len()
    }

    /// Color of every closed curve: edge components by least edge label,
    /// then free loops.
    pub fn component_colors(&self) -> Vec<Color> {
        let (labels, n) = self.edge_components();
        let mut colors = vec![0; n];
        for (e, &l) in labels.iter().enumerate() {
            colors[l] = self.edge_colors[e];
        }
        colors.extend(self.free_loops.iter().copied());
        colors
    }

    /// Recolor `from` to `into` and close the gap left by `from`.
    fn merge_colors(&mut self, into: Color, from: Color) {
        debug_assert!(into < from);
        let relabel = |c: Color| match c.cmp(&from) {
            std::cmp::Ordering::Less => c,
            std::cmp::Ordering::Equal => into,
            std::cmp::Ordering::Greater => c - 1,
        };
        for c in self.edge_colors.iter_mut().chain(self.free_loops.iter_mut()) {
            *c = relabel(*c);
        }
        self.free_loops.sort_unstable();
        self.colors -= 1;
    }

    /// Apply one of the five local moves at `index`.
    ///
    /// `Zero`/`One` on a dichromatic crossing merge its two colors into the
    /// smaller one; on a monochromatic crossing they act like the bar types.
    pub fn smooth(&self, index: usize, t: SmoothingType) -> Result<TiedDiagram, DiagramError> {
        let class = self.class(index)?;
        let mut out = self.clone();
        let crossing = &mut out.crossings[index];
        let resolution = match t {
            SmoothingType::Two => {
                if !class.is_dichromatic() {
                    return Err(DiagramError::TwoOnMonochromatic(index));
                }
                let flipped = crossing.is_flipped();
                crossing.status = CrossingStatus::Active { flipped: !flipped };
                return Ok(out);
            }
            SmoothingType::BarZero | SmoothingType::BarOne if class.is_dichromatic() => {
                return Err(DiagramError::BarOnDichromatic(index));
            }
            SmoothingType::Zero | SmoothingType::BarZero => Resolution::Zero,
            SmoothingType::One | SmoothingType::BarOne => Resolution::One,
        };
        crossing.status = CrossingStatus::Smoothed(crossing.to_root_frame(resolution));
        if let Some((i, j)) = class.pair() {
            out.merge_colors(i, j);
        }
        Ok(out)
    }

    /// Smooth every crossing in the assignment's domain, using the bar type
    /// on monochromatic crossings. The result does not depend on the order.
    pub fn apply_assignment(&self, s: &StateAssignment) -> Result<TiedDiagram, DiagramError> {
        let mut out = self.clone();
        for (&index, &r) in &s.choices {
            let t = match (out.class(index)?.is_dichromatic(), r) {
                (true, Resolution::Zero) => SmoothingType::Zero,
                (true, Resolution::One) => SmoothingType::One,
                (false, Resolution::Zero) => SmoothingType::BarZero,
                (false, Resolution::One) => SmoothingType::BarOne,
            };
            out = out.smooth(index, t)?;
        }
        Ok(out)
    }

    /// Disjoint union with a crossingless circle. `color` must be an existing
    /// color or the next fresh one.
    pub fn with_loop(&self, color: Color) -> Result<TiedDiagram, DiagramError> {
        let fresh = self.colors + 1;
        if color == 0 || color > fresh {
            return Err(DiagramError::LoopColor { color, fresh });
        }
        let mut out = self.clone();
        out.free_loops.push(color);
        out.free_loops.sort_unstable();
        out.colors = out.colors.max(color);
        Ok(out)
    }

    /// Erase every component whose color is not in `keep`.
    ///
    /// A crossing that loses one strand disappears and the surviving strand
    /// runs straight through; tombstones are folded into plain arcs. Kept
    /// colors are renumbered `1..=k` preserving order.
    pub fn subdiagram(&self, keep: &BTreeSet<Color>) -> Subdiagram {
        let kept_edge: Vec<bool> = self.edge_colors.iter().map(|c| keep.contains(c)).collect();
        let mut uf = UnionFind::new(self.edge_colors.len());
        let mut surviving = Vec::new();
        for (index, c) in self.crossings.iter().enumerate() {
            let s = c.root_slots;
            match c.status {
                CrossingStatus::Smoothed(_) => {
                    for (a, b) in c.connections() {
                        uf.union(a, b);
                    }
                }
                CrossingStatus::Active { .. } => match (kept_edge[s[0]], kept_edge[s[1]]) {
                    (true, true) => surviving.push(index),
                    (true, false) => uf.union(s[0], s[2]),
                    (false, true) => uf.union(s[1], s[3]),
                    (false, false) => {}
                },
            }
        }

        let color_map: BTreeMap<Color, Color> = (1..=self.colors)
            .filter(|c| keep.contains(c))
            .zip(1..)
            .collect();

        // New edge labels follow the least old label of each merged class.
        let mut class_label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for &index in &surviving {
            for e in self.crossings[index].root_slots {
                touched.insert(uf.find(e));
            }
        }
        let mut edge_colors = Vec::new();
        let mut free_loops: Vec<Color> = self
            .free_loops
            .iter()
            .filter_map(|c| color_map.get(c).copied())
            .collect();
        let mut seen_loop_classes = BTreeSet::new();
        for e in 0..self.edge_colors.len() {
            if !kept_edge[e] {
                continue;
            }
            let root = uf.find(e);
            let color = color_map[&self.edge_colors[e]];
            if touched.contains(&root) {
                if let std::collections::btree_map::Entry::Vacant(v) = class_label.entry(root) {
                    v.insert(edge_colors.len());
                    edge_colors.push(color);
                }
            } else if seen_loop_classes.insert(root) {
                free_loops.push(color);
            }
        }
        free_loops.sort_unstable();

        let mut crossing_map = BTreeMap::new();
        let crossings = surviving
            .iter()
            .enumerate()
            .map(|(new, &old)| {
                crossing_map.insert(old, new);
                let c = &self.crossings[old];
                Crossing {
                    root_slots: c.root_slots.map(|e| class_label[&uf.find(e)]),
                    status: c.status,
                }
            })
            .collect();

        Subdiagram {
            diagram: TiedDiagram {
                crossings,
                edge_colors,
                free_loops,
                colors: color_map.len() as u32,
            },
            color_map,
            crossing_map,
        }
    }

    /// The diagram with tombstones removed and edges relabeled compactly.
    pub fn compacted(&self) -> TiedDiagram {
        let all: BTreeSet<Color> = (1..=self.colors).collect();
        self.subdiagram(&all).diagram
    }

    /// Bracket of a diagram without illegal crossings: `c^(k-1) (-A^2-A^-2)^(s-k)`
    /// for `s` circles in `k` colors. The empty diagram evaluates to 1.
    pub fn evaluate_legal_diagram(&self) -> Result<TiedLaurent, DiagramError> {
        let illegal = self.illegal_crossings().len();
        if illegal > 0 {
            return Err(DiagramError::NotLegal(illegal));
        }
        if self.colors == 0 {
            return Ok(TiedLaurent::one());
        }
        let s = self.component_count() as u32;
        let k = self.colors;
        Ok(TiedLaurent::c_pow(k - 1) * TiedLaurent::loop_value().pow(s - k))
    }

    /// Planar diagram code of the compacted diagram (1-based labels, current
    /// frame), ready to be written in the text format.
    pub fn to_input(&self) -> DiagramInput {
        let d = self.compacted();
        let pd = d
            .crossings
            .iter()
            .map(|c| c.slots().map(|e| e as i64 + 1))
            .collect();
        let (labels, n) = d.edge_components();
        let mut colors = vec![0; n];
        for (e, &l) in labels.iter().enumerate() {
            colors[l] = d.edge_colors[e];
        }
        DiagramInput {
            source: DiagramSource::Pd(pd),
            colors,
            loops: d.free_loops.clone(),
        }
    }

    pub fn state_key(&self) -> StateKey {
        let crossings = self
            .crossings
            .iter()
            .map(|c| match c.status {
                CrossingStatus::Active { .. } => FinalResolution::Kept,
                CrossingStatus::Smoothed(Resolution::Zero) => FinalResolution::Zero,
                CrossingStatus::Smoothed(Resolution::One) => FinalResolution::One,
            })
            .collect();
        StateKey {
            crossings,
            edge_colors: self.edge_colors.clone(),
            free_loops: self.free_loops.clone(),
        }
    }
}

/// `k_σ` of an assignment.
pub fn k_sigma(s: &StateAssignment) -> i64 {
    s.k_sigma()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(strands: usize, word: &[i32], colors: &[Color]) -> TiedDiagram {
        TiedDiagram::from_braid(strands, word, colors, &[]).unwrap()
    }

    fn mono_hopf() -> TiedDiagram {
        braid(2, &[1, 1], &[1, 1])
    }

    fn tied_hopf() -> TiedDiagram {
        braid(2, &[1, 1], &[1, 2])
    }

    fn the_x_crossing(d: &TiedDiagram) -> usize {
        d.classify().x_all()[0]
    }

    #[test]
    fn braid_examples() {
        let d = mono_hopf();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.color_count(), 1);

        let census = tied_hopf().classify();
        assert_eq!((census.x(), census.y(), census.z()), (1, 1, 0));

        let d = TiedDiagram::from_braid(1, &[], &[1], &[2]).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.free_loops(), &[1, 2]);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn braid_errors() {
        assert_eq!(
            TiedDiagram::from_braid(2, &[2], &[1], &[]),
            Err(DiagramError::GeneratorOutOfRange { generator: 2, strands: 2 })
        );
        assert!(matches!(
            TiedDiagram::from_braid(2, &[0], &[1], &[]),
            Err(DiagramError::GeneratorOutOfRange { .. })
        ));
        assert_eq!(
            TiedDiagram::from_braid(2, &[1], &[1, 2], &[]),
            Err(DiagramError::ColorCount { expected: 1, got: 2 })
        );
        assert_eq!(TiedDiagram::from_braid(0, &[], &[], &[]), Err(DiagramError::NoStrands));
        assert_eq!(TiedDiagram::from_braid(2, &[1], &[0], &[]), Err(DiagramError::ZeroColor));
    }

    #[test]
    fn colors_are_normalized() {
        let d = braid(2, &[1, 1], &[3, 7]);
        assert_eq!(d.color_count(), 2);
        assert_eq!(d, tied_hopf());
    }

    #[test]
    fn classify_examples() {
        let c = mono_hopf().classify();
        assert_eq!((c.z(), c.x(), c.y()), (2, 0, 0));
        let c = tied_hopf().classify();
        assert_eq!((c.x_ij(1, 2), c.y_ij(1, 2), c.z()), (1, 1, 0));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(tied_hopf().complexity(), Complexity { total: 2, illegal: 1 });
        assert_eq!(TiedDiagram::unknot().complexity(), Complexity { total: 0, illegal: 0 });
        assert!(Complexity { total: 2, illegal: 0 } > Complexity { total: 1, illegal: 1 });
    }

    #[test]
    fn smooth_examples() {
        let d = mono_hopf().smooth(0, SmoothingType::BarZero).unwrap();
        assert_eq!(d.complexity(), Complexity { total: 1, illegal: 1 });

        let h = tied_hopf();
        let x = the_x_crossing(&h);
        let two = h.smooth(x, SmoothingType::Two).unwrap();
        assert_eq!(two.complexity(), Complexity { total: 2, illegal: 0 });
        assert_eq!(two.classify().y_ij(1, 2), 2);

        let zero = h.smooth(x, SmoothingType::Zero).unwrap();
        assert_eq!(zero.color_count(), 1);
        assert_eq!(zero.crossing_count(), 1);
        assert_eq!(zero.classify().z(), 1);
    }

    #[test]
    fn smooth_errors() {
        let h = mono_hopf();
        assert_eq!(h.smooth(0, SmoothingType::Two), Err(DiagramError::TwoOnMonochromatic(0)));
        assert_eq!(h.smooth(9, SmoothingType::Zero), Err(DiagramError::CrossingOutOfRange(9)));
        let once = h.smooth(0, SmoothingType::BarOne).unwrap();
        assert_eq!(once.smooth(0, SmoothingType::BarOne), Err(DiagramError::CrossingNotActive(0)));
        let t = tied_hopf();
        assert_eq!(t.smooth(0, SmoothingType::BarZero), Err(DiagramError::BarOnDichromatic(0)));
    }

    #[test]
    fn double_crossing_change_is_identity() {
        let t = tied_hopf();
        let back = t
            .smooth(0, SmoothingType::Two)
            .and_then(|d| d.smooth(0, SmoothingType::Two))
            .unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn smoothing_a_flipped_crossing_is_the_opposite_root_resolution() {
        let t = tied_hopf();
        let x = the_x_crossing(&t);
        let flipped = t.smooth(x, SmoothingType::Two).unwrap();
        let a = flipped.smooth(x, SmoothingType::Zero).unwrap();
        let b = t.smooth(x, SmoothingType::One).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subdiagram_examples() {
        let t = tied_hopf();
        let sub = t.subdiagram(&BTreeSet::from([1]));
        assert_eq!(sub.diagram, TiedDiagram::unknot());
        assert_eq!(sub.diagram.crossing_count(), 0);

        let all = t.subdiagram(&BTreeSet::from([1, 2]));
        assert_eq!(all.diagram, t);

        let none = t.subdiagram(&BTreeSet::new());
        assert!(none.diagram.is_empty());

        let sub2 = t.subdiagram(&BTreeSet::from([2]));
        assert_eq!(sub2.diagram, TiedDiagram::unknot());
        assert_eq!(sub2.color_map, BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn subdiagram_of_three_colors() {
        // Closure of a 3-strand braid with three components.
        let d = braid(3, &[1, 1, 2, 2, -1, -1, 2, -2, 2, 2], &[1, 2, 3]);
        let sub = d.subdiagram(&BTreeSet::from([1, 2]));
        let census = d.classify();
        let expected = census.x_ij(1, 2) + census.y_ij(1, 2) + census.z_i(1) + census.z_i(2);
        let sc = sub.diagram.classify();
        assert_eq!(sc.m(), expected);
        assert_eq!(sc.x_ij(1, 2), census.x_ij(1, 2));
        assert_eq!(sc.y_ij(1, 2), census.y_ij(1, 2));
        for (old, new) in &sub.crossing_map {
            assert_eq!(d.class(*old).unwrap(), sub.diagram.class(*new).unwrap());
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(mono_hopf().component_count(), 2);
        assert_eq!(TiedDiagram::unknot().component_count(), 1);
        let t = tied_hopf();
        let x = the_x_crossing(&t);
        let y = 1 - x;
        let d = t
            .smooth(x, SmoothingType::Zero)
            .and_then(|d| d.smooth(y, SmoothingType::BarZero))
            .unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn legal_evaluation() {
        assert!(TiedDiagram::unknot().evaluate_legal_diagram().unwrap().is_one());
        let two = TiedDiagram::unknot().with_loop(2).unwrap();
        assert_eq!(two.evaluate_legal_diagram().unwrap(), TiedLaurent::c());
        let three = two.with_loop(2).unwrap();
        assert_eq!(
            three.evaluate_legal_diagram().unwrap(),
            TiedLaurent::c() * TiedLaurent::loop_value()
        );
        assert_eq!(mono_hopf().evaluate_legal_diagram(), Err(DiagramError::NotLegal(2)));
        let legal = tied_hopf().smooth(the_x_crossing(&tied_hopf()), SmoothingType::Two).unwrap();
        assert_eq!(legal.evaluate_legal_diagram().unwrap(), TiedLaurent::c());
    }

    #[test]
    fn k_sigma_examples() {
        assert_eq!(k_sigma(&StateAssignment::empty()), 0);
        let s: StateAssignment =
            [(1, Resolution::Zero), (2, Resolution::Zero), (3, Resolution::One)].into_iter().collect();
        assert_eq!(s.k_sigma(), 1);
        let s: StateAssignment = [(1, Resolution::One), (2, Resolution::One)].into_iter().collect();
        assert_eq!(s.k_sigma(), -2);
        let e = BTreeMap::from([
            (0, SmoothingType::BarZero),
            (1, SmoothingType::BarOne),
            (2, SmoothingType::BarOne),
            (3, SmoothingType::Zero),
        ]);
        assert_eq!(e_count(&e), -1);
        assert_eq!(e_count(&BTreeMap::new()), 0);
    }

    #[test]
    fn assignment_examples() {
        let t = tied_hopf();
        assert_eq!(t.apply_assignment(&StateAssignment::empty()).unwrap(), t);
        let x = the_x_crossing(&t);
        let s: StateAssignment = [(x, Resolution::Zero)].into_iter().collect();
        let d = t.apply_assignment(&s).unwrap();
        assert_eq!(d, t.smooth(x, SmoothingType::Zero).unwrap());
        assert_eq!(d.color_count(), 1);
        assert_eq!(d.crossing_count(), 1);

        let s: StateAssignment = [(0, Resolution::Zero), (1, Resolution::Zero)].into_iter().collect();
        assert_eq!(mono_hopf().apply_assignment(&s).unwrap().component_count(), 2);
    }

    #[test]
    fn pd_export_round_trips() {
        let t = braid(3, &[1, -2, 1, 2, 2], &[1, 2]);
        let back = t.to_input().build().unwrap();
        assert_eq!(back, t);
        let smoothed = t.smooth(0, SmoothingType::Zero).unwrap();
        let back = smoothed.to_input().build().unwrap();
        assert_eq!(back, smoothed.compacted());
    }

    #[test]
    fn loops() {
        let d = tied_hopf();
        assert_eq!(d.with_loop(4), Err(DiagramError::LoopColor { color: 4, fresh: 3 }));
        let d3 = d.with_loop(3).unwrap();
        assert_eq!(d3.color_count(), 3);
        assert_eq!(d3.component_count(), 3);
    }
}
