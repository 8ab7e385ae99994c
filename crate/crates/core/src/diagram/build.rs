//! Constructors: braid closures and planar diagram codes.

use std::collections::{BTreeMap, BTreeSet};

use super::{Color, Crossing, DiagramError, TiedDiagram};
use crate::union_find::UnionFind;

impl TiedDiagram {
    /// Closure of a braid word on `strands` strands.
    ///
    /// Generator `k > 0` crosses positions `k` and `k + 1` with the strand
    /// coming from the upper left passing under; `-k` is its mirror. `colors`
    /// has one entry per closure component, components ordered by the least
    /// top position they pass through. `loops` adds crossingless circles.
    pub fn from_braid(
        strands: usize,
        word: &[i32],
        colors: &[Color],
        loops: &[Color],
    ) -> Result<TiedDiagram, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::NoStrands);
        }
        // Edges 0..strands are the top ends of the strands.
        let mut current: Vec<usize> = (0..strands).collect();
        let mut next_label = strands;
        let mut slots = Vec::with_capacity(word.len());
        for &g in word {
            let k = g.unsigned_abs() as usize;
            if k == 0 || k >= strands {
                return Err(DiagramError::GeneratorOutOfRange { generator: g, strands });
            }
            let p = k - 1;
            let (top_left, top_right) = (current[p], current[p + 1]);
            let (bottom_left, bottom_right) = (next_label, next_label + 1);
            next_label += 2;
            // Counterclockwise from the incoming under-strand.
            slots.push(if g > 0 {
                [top_left, bottom_left, bottom_right, top_right]
            } else {
                [top_right, top_left, bottom_left, bottom_right]
            });
            current[p] = bottom_left;
            current[p + 1] = bottom_right;
        }
        // Close up: the bottom end at each position is the top end there.
        let mut rename: BTreeMap<usize, usize> = BTreeMap::new();
        for (p, &bottom) in current.iter().enumerate() {
            if bottom != p {
                rename.insert(bottom, p);
            }
        }
        for quad in &mut slots {
            for e in quad.iter_mut() {
                if let Some(&top) = rename.get(e) {
                    *e = top;
                }
            }
        }
        // Renamed bottom labels are gone; untouched positions stay as loops.
        let live: BTreeSet<usize> = slots
            .iter()
            .flatten()
            .copied()
            .chain((0..strands).filter(|&p| current[p] == p))
            .collect();
        let index: BTreeMap<usize, usize> = live.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let slots = slots.into_iter().map(|q| q.map(|l| index[&l])).collect();
        assemble(slots, index.len(), colors, loops)
    }

    /// Diagram from a planar diagram code: one counterclockwise quadruple of
    /// arc labels per crossing, under-strand on positions 0 and 2. Colors are
    /// given per component, components ordered by their least arc label.
    pub fn from_pd(pd: &[[i64; 4]], colors: &[Color], loops: &[Color]) -> Result<TiedDiagram, DiagramError> {
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for quad in pd {
            for &l in quad {
                *counts.entry(l).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &n)| n != 2) {
            return Err(DiagramError::DanglingArc { label, count });
        }
        let index: BTreeMap<i64, usize> = counts.keys().enumerate().map(|(i, &l)| (l, i)).collect();
        let slots = pd.iter().map(|q| q.map(|l| index[&l])).collect();
        assemble(slots, index.len(), colors, loops)
    }
}

/// Builds a diagram from raw slots over labels `0..labels`. Each label occurs
/// twice, or not at all for a crossingless circle. Components are ordered by
/// least label.
fn assemble(
    slots: Vec<[usize; 4]>,
    labels: usize,
    colors: &[Color],
    loops: &[Color],
) -> Result<TiedDiagram, DiagramError> {
    let mut uf = UnionFind::new(labels);
    let mut attached = vec![false; labels];
    for s in &slots {
        uf.union(s[0], s[2]);
        uf.union(s[1], s[3]);
        for &e in s {
            attached[e] = true;
        }
    }
    let mut component_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut component = Vec::with_capacity(labels);
    for e in 0..labels {
        let root = uf.find(e);
        let next = component_of_root.len();
        component.push(*component_of_root.entry(root).or_insert(next));
    }
    if colors.len() != component_of_root.len() {
        return Err(DiagramError::ColorCount {
            expected: component_of_root.len(),
            got: colors.len(),
        });
    }
    if colors.iter().chain(loops).any(|&c| c == 0) {
        return Err(DiagramError::ZeroColor);
    }
    let used: BTreeSet<Color> = colors.iter().chain(loops).copied().collect();
    let rank: BTreeMap<Color, Color> = used.iter().copied().zip(1..).collect();

    let mut relabel = vec![usize::MAX; labels];
    let mut edge_colors = Vec::new();
    let mut free_loops: Vec<Color> = loops.iter().map(|c| rank[c]).collect();
    let mut loop_components = BTreeSet::new();
    for e in 0..labels {
        let color = rank[&colors[component[e]]];
        if attached[e] {
            relabel[e] = edge_colors.len();
            edge_colors.push(color);
        } else if loop_components.insert(component[e]) {
            free_loops.push(color);
        }
    }
    free_loops.sort_unstable();
    let crossings = slots
        .into_iter()
        .map(|s| Crossing::new(s.map(|e| relabel[e])))
        .collect();
    Ok(TiedDiagram {
        crossings,
        edge_colors,
        free_loops,
        colors: rank.len() as u32,
    })
}
