//! Simply-laced Dynkin data in Bourbaki numbering and the center character
//! group `C* = P/Q` with the classes of the fundamental weights.

use crate::abgroup::{AbHom, Cokernel, Element, FinAbGroup, IntMatrix};
use crate::error::{capability, input, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Largest rank handled; vertex sets are stored as 32-bit masks.
pub const MAX_RANK: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    D,
    E,
}

impl FromStr for Kind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Kind::A),
            "D" => Ok(Kind::D),
            "E" => Ok(Kind::E),
            "B" | "C" | "F" | "G" => Err(capability(format!(
                "type {s} has multiple edges in its Dynkin diagram; only simply-laced types A, D, E are modelled"
            ))),
            _ => Err(input(format!("unknown Cartan type {s:?}"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Kind::A => "A",
            Kind::D => "D",
            Kind::E => "E",
        };
        f.write_str(c)
    }
}

fn check_rank(kind: Kind, rank: usize) -> Result<()> {
    let ok = match kind {
        Kind::A => (1..=MAX_RANK).contains(&rank),
        Kind::D => (3..=MAX_RANK).contains(&rank),
        Kind::E => rank == 6 || rank == 7,
    };
    if ok {
        Ok(())
    } else if kind == Kind::E {
        Err(capability(format!("E{rank} is not supported; only E6 and E7 are modelled")))
    } else {
        Err(capability(format!("{kind}{rank} is outside the supported rank range")))
    }
}

/// Edges of the Dynkin diagram, 1-based.
fn edges(kind: Kind, rank: usize) -> Vec<(usize, usize)> {
    match kind {
        Kind::A => (1..rank).map(|i| (i, i + 1)).collect(),
        Kind::D => {
            let mut e: Vec<_> = (1..rank - 1).map(|i| (i, i + 1)).collect();
            e.push((rank - 2, rank));
            e
        }
        Kind::E => {
            let mut e = vec![(1, 3), (2, 4)];
            e.extend((3..rank).map(|i| (i, i + 1)));
            e
        }
    }
}

/// The Cartan matrix of a simply-laced type; row and column `i - 1` belong
/// to vertex `i`.
pub fn cartan_matrix(kind: Kind, rank: usize) -> Result<IntMatrix> {
    check_rank(kind, rank)?;
    let mut m = vec![vec![0i64; rank]; rank];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges(kind, rank) {
        m[a - 1][b - 1] = -1;
        m[b - 1][a - 1] = -1;
    }
    Ok(m)
}

/// A set of vertices `1..=rank` stored as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u32) -> Self {
        VertexSet(mask)
    }

    pub fn full(rank: usize) -> Self {
        VertexSet(if rank >= 32 { u32::MAX } else { (1u32 << rank) - 1 })
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=32).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << (v - 1))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    /// Complement inside `1..=rank`.
    pub fn complement(self, rank: usize) -> Self {
        VertexSet(!self.0 & Self::full(rank).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=32).filter(move |&v| self.contains(v))
    }

    /// Every subset of `1..=rank` in increasing mask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = VertexSet> {
        (0..=Self::full(rank).0).map(VertexSet)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&x| x == 0 || x > 32) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

/// A permutation of the vertices preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAut {
    images: Vec<usize>,
}

impl DiagramAut {
    pub fn identity(rank: usize) -> Self {
        Self { images: (1..=rank).collect() }
    }

    /// Builds the automorphism from the 1-based images of `1..=rank`.
    pub fn new(cartan: &IntMatrix, images: Vec<usize>) -> Result<Self> {
        let n = cartan.len();
        let mut seen = vec![false; n];
        if images.len() != n {
            return Err(input("permutation length does not match the rank"));
        }
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(input(format!("{images:?} is not a permutation of 1..={n}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if cartan[images[i] - 1][images[j] - 1] != cartan[i][j] {
                    return Err(input(format!("{images:?} does not preserve the Dynkin diagram")));
                }
            }
        }
        Ok(Self { images })
    }

    /// Transposition of two vertices; fails unless it preserves the diagram.
    pub fn swap(cartan: &IntMatrix, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=cartan.len()).collect();
        images.swap(a - 1, b - 1);
        Self::new(cartan, images)
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v - 1]
    }

    pub fn apply_set(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.apply(v)).collect()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DiagramAut) -> DiagramAut {
        DiagramAut { images: self.images.iter().map(|&v| other.apply(v)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for DiagramAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let mut seen = vec![false; self.rank()];
        let mut out = String::new();
        for start in 1..=self.rank() {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v - 1] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            let parts: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("({})", parts.join(" ")));
        }
        f.write_str(&out)
    }
}

/// Every automorphism of the Dynkin diagram, identity first.
pub fn diagram_automorphisms(kind: Kind, rank: usize) -> Result<Vec<DiagramAut>> {
    let cartan = cartan_matrix(kind, rank)?;
    let mut out = Vec::new();
    let mut partial = Vec::with_capacity(rank);
    let mut used = vec![false; rank];
    extend_automorphism(&cartan, &mut partial, &mut used, &mut out);
    out.sort();
    Ok(out)
}

fn extend_automorphism(
    cartan: &IntMatrix,
    partial: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<DiagramAut>,
) {
    let n = cartan.len();
    let i = partial.len();
    if i == n {
        out.push(DiagramAut { images: partial.iter().map(|v| v + 1).collect() });
        return;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let consistent = (0..i).all(|j| cartan[cand][partial[j]] == cartan[i][j]);
        if consistent {
            used[cand] = true;
            partial.push(cand);
            extend_automorphism(cartan, partial, used, out);
            partial.pop();
            used[cand] = false;
        }
    }
}

/// Root system data together with the center character group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    kind: Kind,
    rank: usize,
    cartan: IntMatrix,
    center: Cokernel,
}

impl RootSystem {
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(kind, rank)?;
        // P/Q in the basis of fundamental weights: the roots are the columns
        // of the Cartan matrix
        let relations: Vec<Vec<i64>> = (0..rank).map(|j| cartan.iter().map(|r| r[j]).collect()).collect();
        let raw = FinAbGroup::cokernel(rank, &relations)?;
        let center = canonical_coordinates(raw)?;
        Ok(Self { kind, rank, cartan, center })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.rank)
    }

    /// `C*`.
    pub fn center(&self) -> &FinAbGroup {
        self.center.group()
    }

    /// The projection `Z^rank → C*`, basis vector `i - 1` being the
    /// fundamental weight of vertex `i`.
    pub fn restriction_map(&self) -> &AbHom {
        &self.center.projection
    }

    pub fn center_presentation(&self) -> &Cokernel {
        &self.center
    }

    /// The class of the fundamental weight of vertex `i` in `C*`.
    pub fn restriction(&self, i: usize) -> Element {
        self.center.projection.column(i - 1)
    }

    pub fn restrictions(&self) -> Vec<Element> {
        (1..=self.rank).map(|i| self.restriction(i)).collect()
    }

    /// Homomorphism `C* → target` sending the class of vertex `i` to
    /// `values[i - 1]`. Fails unless the values kill the root lattice.
    pub fn hom_from_vertex_values(&self, target: &FinAbGroup, values: &[Element]) -> Result<AbHom> {
        self.center.descend(target, values)
    }

    pub fn automorphisms(&self) -> Vec<DiagramAut> {
        let mut out = Vec::new();
        let mut partial = Vec::new();
        let mut used = vec![false; self.rank];
        extend_automorphism(&self.cartan, &mut partial, &mut used, &mut out);
        out.sort();
        out
    }

    /// The induced automorphism of `C*`: the class of vertex `i` goes to the
    /// class of vertex `σ(i)`.
    pub fn induced_center_action(&self, sigma: &DiagramAut) -> Result<AbHom> {
        let values: Vec<Element> = (1..=self.rank).map(|i| self.restriction(sigma.apply(i))).collect();
        self.hom_from_vertex_values(self.center(), &values)
    }

    /// Display names for the elements of `C*`.
    pub fn element_names(&self) -> Vec<(Element, String)> {
        let g = self.center();
        let mut named: Vec<(Element, String)> = vec![(g.zero(), "0".into())];
        let mut push = |x: Element, name: String| {
            if !named.iter().any(|(y, _)| *y == x) {
                named.push((x, name));
            }
        };
        match self.kind {
            Kind::D => {
                push(self.restriction(1), "chi".into());
                push(self.restriction(self.rank - 1), "chi+".into());
                push(self.restriction(self.rank), "chi-".into());
            }
            Kind::E if self.rank == 6 => {
                let gen = self.restriction(1);
                push(gen.clone(), "g".into());
                if let Ok(two) = g.scale(2, &gen) {
                    push(two, "2g".into());
                }
            }
            Kind::E => {
                if let Ok(all) = g.elements() {
                    for x in all.into_iter().filter(|x| *x != g.zero()) {
                        push(x, "chi".into());
                    }
                }
            }
            Kind::A => {
                let w = self.restriction(1);
                for k in 1..=self.rank as i64 {
                    if let Ok(x) = g.scale(k, &w) {
                        let name = if k == 1 { "w1".to_string() } else { format!("{k}w1") };
                        push(x, name);
                    }
                }
            }
        }
        named
    }

    pub fn name_of(&self, x: &[i64]) -> String {
        self.element_names()
            .into_iter()
            .find(|(y, _)| y == x)
            .map(|(_, n)| n)
            .unwrap_or_else(|| format_coords(x))
    }

    /// Parses an element of `C*` given by name or by coordinates such as
    /// `(1,0)` or `2`.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if let Some((x, _)) = self.element_names().into_iter().find(|(_, n)| n == s) {
            return Ok(x);
        }
        let coords = parse_coords(s)
            .ok_or_else(|| input(format!("{s:?} is neither an element name nor a coordinate tuple")))?;
        self.center().reduce(&coords)
    }
}

pub fn format_coords(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn parse_coords(s: &str) -> Option<Vec<i64>> {
    let s = s.trim();
    let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    if inner.trim().is_empty() {
        return Some(vec![]);
    }
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Re-expresses `C*` so that its generators are the classes of the
/// lowest-numbered vertices that form a basis matching the invariant factors.
fn canonical_coordinates(raw: Cokernel) -> Result<Cokernel> {
    let group = raw.group().clone();
    let k = group.ngens();
    if k == 0 || !group.is_finite() {
        return Ok(raw);
    }
    let n = raw.projection.domain().ngens();
    let classes: Vec<Element> = (0..n).map(|i| raw.projection.column(i)).collect();
    let mut tuple = vec![0usize; k];
    loop {
        let distinct = (0..k).all(|a| (0..a).all(|b| tuple[a] != tuple[b]));
        if distinct {
            let images: Vec<Element> = tuple.iter().map(|&v| classes[v].clone()).collect();
            if let Ok(basis_map) = AbHom::from_images(group.clone(), group.clone(), &images) {
                if let Ok(iso) = basis_map.inverse() {
                    let mut c = raw.recoordinate(&iso)?;
                    c.lifts = tuple
                        .iter()
                        .map(|&v| (0..n).map(|i| i64::from(i == v)).collect())
                        .collect();
                    return Ok(c);
                }
            }
        }
        // next tuple in lexicographic order
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(raw);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// `C*` together with the class of every fundamental weight.
pub fn center_characters(kind: Kind, rank: usize) -> Result<(FinAbGroup, Vec<Element>)> {
    let rs = RootSystem::new(kind, rank)?;
    Ok((rs.center().clone(), rs.restrictions()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(kind: Kind, rank: usize) -> RootSystem {
        RootSystem::new(kind, rank).unwrap()
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_matrix(Kind::A, 2).unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        let d4 = cartan_matrix(Kind::D, 4).unwrap();
        let nbrs: Vec<usize> = (1..=4).filter(|&j| d4[1][j - 1] == -1).collect();
        assert_eq!(nbrs, vec![1, 3, 4]);
        let e7 = cartan_matrix(Kind::E, 7).unwrap();
        for (a, b) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)] {
            assert_eq!(e7[a - 1][b - 1], -1);
        }
        let edges: i64 = e7.iter().flatten().filter(|&&x| x == -1).count() as i64;
        assert_eq!(edges, 12);
    }

    #[test]
    fn unsupported_types() {
        for t in ["B", "C", "F", "G"] {
            let err = t.parse::<Kind>().unwrap_err();
            assert!(matches!(err, crate::Error::Capability(ref m) if m.contains("multiple edges")), "{err}");
        }
        assert!(matches!(cartan_matrix(Kind::E, 8), Err(crate::Error::Capability(_))));
        assert!(matches!(cartan_matrix(Kind::D, 2), Err(crate::Error::Capability(_))));
        assert!("Q".parse::<Kind>().is_err());
    }

    #[test]
    fn cartan_is_symmetric_simply_laced() {
        for (k, n) in [(Kind::A, 5), (Kind::D, 7), (Kind::E, 6), (Kind::E, 7)] {
            let c = cartan_matrix(k, n).unwrap();
            for (i, row) in c.iter().enumerate() {
                assert_eq!(row[i], 2);
                for (j, &x) in row.iter().enumerate() {
                    assert_eq!(x, c[j][i]);
                    if i != j {
                        assert!(c[i][j] == 0 || c[i][j] == -1);
                    }
                }
            }
        }
    }

    #[test]
    fn e6_restrictions() {
        let r = rs(Kind::E, 6);
        assert_eq!(r.center(), &FinAbGroup::cyclic(3).unwrap());
        let names: Vec<String> = (1..=6).map(|i| r.name_of(&r.restriction(i))).collect();
        assert_eq!(names, ["g", "0", "2g", "0", "g", "2g"]);
        // ω̄6 = −ω̄1 on the center
        assert_eq!(r.restriction(6), r.center().neg(&r.restriction(1)).unwrap());
    }

    #[test]
    fn e7_restrictions() {
        let r = rs(Kind::E, 7);
        assert_eq!(r.center(), &FinAbGroup::cyclic(2).unwrap());
        let nontrivial: Vec<usize> = (1..=7).filter(|&i| r.restriction(i) != vec![0]).collect();
        assert_eq!(nontrivial, vec![2, 5, 7]);
    }

    #[test]
    fn d_restrictions() {
        let d5 = rs(Kind::D, 5);
        assert_eq!(d5.center(), &FinAbGroup::cyclic(4).unwrap());
        let d6 = rs(Kind::D, 6);
        assert_eq!(d6.center(), &FinAbGroup::new(0, vec![2, 2]).unwrap());
        let names: Vec<String> = d6.element_names().into_iter().map(|(_, n)| n).collect();
        assert_eq!(names, ["0", "chi", "chi+", "chi-"]);
        for n in 3..=10 {
            let d = rs(Kind::D, n);
            let g = d.center();
            let chi = d.restriction(1);
            for i in 1..=n - 2 {
                let expected = if i % 2 == 1 { chi.clone() } else { g.zero() };
                assert_eq!(d.restriction(i), expected, "D{n} vertex {i}");
            }
            let plus = d.restriction(n - 1);
            let minus = d.restriction(n);
            if n % 2 == 0 {
                assert_eq!(g.add(&plus, &minus).unwrap(), chi);
            } else {
                assert_eq!(g.scale(2, &plus).unwrap(), chi);
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(diagram_automorphisms(Kind::E, 7).unwrap(), vec![DiagramAut::identity(7)]);
        let d6 = diagram_automorphisms(Kind::D, 6).unwrap();
        assert_eq!(d6.len(), 2);
        assert_eq!(d6[1].to_string(), "(5 6)");
        assert_eq!(diagram_automorphisms(Kind::D, 4).unwrap().len(), 6);
        assert_eq!(diagram_automorphisms(Kind::E, 6).unwrap().len(), 2);
        assert_eq!(diagram_automorphisms(Kind::A, 5).unwrap().len(), 2);
        assert_eq!(diagram_automorphisms(Kind::A, 1).unwrap().len(), 1);
        let orders: Vec<usize> = diagram_automorphisms(Kind::D, 4).unwrap().iter().map(DiagramAut::order).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
    }

    #[test]
    fn automorphisms_permute_restrictions() {
        for (k, n) in [(Kind::A, 4), (Kind::D, 4), (Kind::D, 5), (Kind::D, 6), (Kind::E, 6), (Kind::E, 7)] {
            let r = rs(k, n);
            for sigma in r.automorphisms() {
                let induced = r.induced_center_action(&sigma).unwrap();
                for i in 1..=n {
                    assert_eq!(induced.apply(&r.restriction(i)).unwrap(), r.restriction(sigma.apply(i)));
                }
            }
        }
    }

    #[test]
    fn parse_elements() {
        let d6 = rs(Kind::D, 6);
        assert_eq!(d6.parse_element("chi+").unwrap(), d6.restriction(5));
        assert_eq!(d6.parse_element("(1,1)").unwrap(), d6.center().reduce(&[1, 1]).unwrap());
        assert!(d6.parse_element("g").is_err());
        let e6 = rs(Kind::E, 6);
        assert_eq!(e6.parse_element("4").unwrap(), vec![1]);
    }

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [1, 3].into_iter().collect();
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(s.complement(4).to_string(), "{2,4}");
        assert!(s.is_subset(VertexSet::full(3)));
        assert_eq!(VertexSet::all_subsets(3).count(), 8);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[1,3]");
        assert_eq!(serde_json::from_str::<VertexSet>(&json).unwrap(), s);
    }
}
