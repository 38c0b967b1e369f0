//! Crossing catalog and morphing groups.

use std::collections::BTreeMap;

use super::MorphParams;
use crate::error::{MedError, Result};
use crate::geometry::{blank_area, segment_intersection};
use crate::graphgen::{EdgeId, LayoutGraph};

/// One crossing seen from edge `e`; the catalog also holds the mirror entry
/// seen from `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub e: EdgeId,
    pub c: EdgeId,
    pub u_e: f64,
    pub u_c: f64,
    /// The point lies in the blank area of both edges. Otherwise it sits in a
    /// rest stub and the crossing is drawn no matter how edges are timed.
    pub schedulable: bool,
}

impl Crossing {
    pub fn mirrored(&self) -> Crossing {
        Crossing {
            e: self.c,
            c: self.e,
            u_e: self.u_c,
            u_c: self.u_e,
            schedulable: self.schedulable,
        }
    }

    /// Both stubs can actually reach the crossing point.
    pub fn reachable(&self, params: &MorphParams) -> bool {
        self.u_e.min(1.0 - self.u_e) <= params.eta && self.u_c.min(1.0 - self.u_c) <= params.eta
    }
}

/// Which schedulable crossings link edges into the same group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroupPolicy {
    /// Every schedulable crossing, reachable or not.
    #[default]
    Geometric,
    /// Only crossings both stubs reach (differs from `Geometric` when `eta < 1/2`).
    ReachableOnly,
}

/// Every proper crossing of the layout, both directions, sorted by `(e, c)`.
pub fn crossing_catalog(layout: &LayoutGraph, params: &MorphParams) -> Result<Vec<Crossing>> {
    let blank = blank_area(params.delta)?;
    let segments: Vec<_> = layout.segments().collect();
    let mut catalog = Vec::new();
    for (i, si) in segments.iter().enumerate() {
        for (j, sj) in segments.iter().enumerate().skip(i + 1) {
            let hit = segment_intersection(si, sj).map_err(|e| match e {
                MedError::CollinearSegments => MedError::CollinearOverlap {
                    first: i,
                    second: j,
                },
                other => other,
            })?;
            if let Some(x) = hit {
                let crossing = Crossing {
                    e: i,
                    c: j,
                    u_e: x.u1,
                    u_c: x.u2,
                    schedulable: blank.contains_open(x.u1) && blank.contains_open(x.u2),
                };
                catalog.push(crossing);
                catalog.push(crossing.mirrored());
            }
        }
    }
    catalog.sort_by_key(|x| (x.e, x.c));
    Ok(catalog)
}

/// Edges whose morphing timing interacts, with their linking crossings.
#[derive(Debug, Clone, PartialEq)]
pub struct MorphingGroup {
    /// Ascending edge ids.
    pub edges: Vec<EdgeId>,
    /// Linking crossings in both directions, sorted by `(e, c)`.
    pub crossings: Vec<Crossing>,
    /// Crossing partners of each member within the group.
    pub neighbors: BTreeMap<EdgeId, Vec<EdgeId>>,
}

impl MorphingGroup {
    pub(crate) fn from_members(edges: Vec<EdgeId>, crossings: Vec<Crossing>) -> Self {
        let mut neighbors: BTreeMap<EdgeId, Vec<EdgeId>> =
            edges.iter().map(|&e| (e, Vec::new())).collect();
        for x in &crossings {
            neighbors.entry(x.e).or_default().push(x.c);
        }
        MorphingGroup {
            edges,
            crossings,
            neighbors,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn crossings_of(&self, e: EdgeId) -> impl Iterator<Item = &Crossing> {
        let start = self.crossings.partition_point(|x| x.e < e);
        self.crossings[start..].iter().take_while(move |x| x.e == e)
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Connected components of the graph whose nodes are edges and whose links
/// are linking crossings. Groups are ordered by their smallest edge id.
pub fn morphing_groups(
    layout: &LayoutGraph,
    catalog: &[Crossing],
    params: &MorphParams,
    policy: GroupPolicy,
) -> Vec<MorphingGroup> {
    let links =
        |x: &&Crossing| x.schedulable && (policy == GroupPolicy::Geometric || x.reachable(params));
    let mut dsu = DisjointSet::new(layout.edge_count());
    for x in catalog.iter().filter(links) {
        dsu.union(x.e, x.c);
    }

    let mut by_root: BTreeMap<usize, (Vec<EdgeId>, Vec<Crossing>)> = BTreeMap::new();
    let mut root_order = Vec::new();
    for e in 0..layout.edge_count() {
        let root = dsu.find(e);
        let entry = by_root.entry(root).or_insert_with(|| {
            root_order.push(root);
            Default::default()
        });
        entry.0.push(e);
    }
    for x in catalog.iter().filter(links) {
        let root = dsu.find(x.e);
        by_root.get_mut(&root).expect("root of a member").1.push(*x);
    }
    root_order
        .into_iter()
        .map(|root| {
            let (edges, mut crossings) = by_root.remove(&root).expect("recorded root");
            crossings.sort_by_key(|x| (x.e, x.c));
            MorphingGroup::from_members(edges, crossings)
        })
        .collect()
}
