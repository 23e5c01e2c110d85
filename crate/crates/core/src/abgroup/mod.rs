//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is `Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `d1 | d2 | ... | dk`, each `di >= 2`.
//! Elements are integer vectors with the free coordinates first and the
//! torsion coordinates reduced into `0..di`.

mod snf;
mod subset;

pub use snf::{identity, mat_mul, smith_normal_form, IntMatrix, Snf};
pub use subset::{image, intersect, preimage, subgroup_generated, Subset, SubsetRepr};

use crate::error::{input, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Element = Vec<i64>;

const CTX: &str = "abelian group arithmetic";

fn ck_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow(CTX))
}

fn ck_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow(CTX))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    free_rank: usize,
    invariant_factors: Vec<i64>,
}

impl FinAbGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<i64>) -> Result<Self> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(input(format!("invariant factors must be >= 2, got {invariant_factors:?}")));
        }
        if invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(input(format!("invariant factors must form a divisibility chain, got {invariant_factors:?}")));
        }
        Ok(Self { free_rank, invariant_factors })
    }

    pub fn trivial() -> Self {
        Self { free_rank: 0, invariant_factors: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, invariant_factors: vec![] }
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        match n {
            0 => Ok(Self::free(1)),
            1 => Ok(Self::trivial()),
            n if n < 0 => Err(input("cyclic group order must be non-negative")),
            n => Self::new(0, vec![n]),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    /// Number of coordinates of an element.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// Group order, `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
    }

    /// Modulus of coordinate `i`, or 0 for a free coordinate.
    pub fn modulus(&self, i: usize) -> i64 {
        if i < self.free_rank {
            0
        } else {
            self.invariant_factors[i - self.free_rank]
        }
    }

    pub fn zero(&self) -> Element {
        vec![0; self.ngens()]
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn reduce(&self, x: &[i64]) -> Result<Element> {
        if x.len() != self.ngens() {
            return Err(input(format!(
                "element {x:?} has {} coordinates, group {self} needs {}",
                x.len(),
                self.ngens()
            )));
        }
        Ok(x.iter()
            .enumerate()
            .map(|(i, &v)| match self.modulus(i) {
                0 => v,
                d => v.rem_euclid(d),
            })
            .collect())
    }

    pub fn is_reduced(&self, x: &[i64]) -> bool {
        self.reduce(x).is_ok_and(|r| r == x)
    }

    pub fn check_reduced(&self, x: &[i64]) -> Result<()> {
        if self.is_reduced(x) {
            Ok(())
        } else {
            Err(input(format!("{x:?} is not a reduced element of {self}")))
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Result<Element> {
        let sum: Vec<i64> = x.iter().zip(y).map(|(&a, &b)| ck_add(a, b)).collect::<Result<_>>()?;
        self.reduce(&sum)
    }

    pub fn neg(&self, x: &[i64]) -> Result<Element> {
        let n: Vec<i64> = x
            .iter()
            .map(|&a| a.checked_neg().ok_or(Error::Overflow(CTX)))
            .collect::<Result<_>>()?;
        self.reduce(&n)
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Result<Element> {
        let v: Vec<i64> = x.iter().map(|&a| ck_mul(k, a)).collect::<Result<_>>()?;
        self.reduce(&v)
    }

    /// Order of an element, `None` if it has infinite order.
    pub fn element_order(&self, x: &[i64]) -> Result<Option<i64>> {
        let x = self.reduce(x)?;
        if x[..self.free_rank].iter().any(|&v| v != 0) {
            return Ok(None);
        }
        let mut ord = 1i64;
        for (i, &v) in x.iter().enumerate().skip(self.free_rank) {
            let d = self.modulus(i);
            let o = d / gcd(d, v);
            ord = lcm(ord, o)?;
        }
        Ok(Some(ord))
    }

    /// Every element of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(crate::error::capability(format!("cannot enumerate the infinite group {self}")));
        }
        let mut out = vec![self.zero()];
        for (k, &d) in self.invariant_factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for x in &out {
                for v in 0..d {
                    let mut y = x.clone();
                    y[k] = v;
                    next.push(y);
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    /// Quotient of `Z^n` by the subgroup spanned by `relations`.
    pub fn cokernel(n: usize, relations: &[Vec<i64>]) -> Result<Cokernel> {
        if let Some(r) = relations.iter().find(|r| r.len() != n) {
            return Err(input(format!("relation {r:?} does not have {n} coordinates")));
        }
        // columns of the relation matrix are the relations
        let m: IntMatrix = (0..n).map(|i| relations.iter().map(|r| r[i]).collect()).collect();
        let snf = if relations.is_empty() {
            Snf {
                s: vec![vec![]; n],
                u: identity(n),
                u_inv: identity(n),
                v: vec![],
                v_inv: vec![],
            }
        } else {
            smith_normal_form(&m)?
        };
        let diag = snf.diagonal();
        let rank = snf.rank();
        let free_rows: Vec<usize> = (rank..n).collect();
        let torsion_rows: Vec<usize> = (0..rank).filter(|&i| diag[i] > 1).collect();
        let group = FinAbGroup::new(free_rows.len(), torsion_rows.iter().map(|&i| diag[i]).collect())?;
        let rows: Vec<usize> = free_rows.iter().chain(&torsion_rows).copied().collect();
        let matrix: IntMatrix = rows
            .iter()
            .enumerate()
            .map(|(k, &r)| {
                let d = group.modulus(k);
                snf.u[r].iter().map(|&x| if d == 0 { x } else { x.rem_euclid(d) }).collect()
            })
            .collect();
        let lifts: Vec<Element> = rows
            .iter()
            .map(|&r| (0..n).map(|i| snf.u_inv[i][r]).collect())
            .collect();
        let projection = AbHom::new(FinAbGroup::free(n), group, matrix)?;
        Ok(Cokernel { projection, lifts })
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn lcm(a: i64, b: i64) -> Result<i64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    ck_mul(a / gcd(a, b), b).map(i64::abs)
}

/// A homomorphism given by the images of the canonical generators of its
/// domain: column `j` of `matrix` is the image of generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(domain: FinAbGroup, codomain: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.len() != codomain.ngens() || matrix.iter().any(|r| r.len() != domain.ngens()) {
            return Err(input(format!(
                "matrix shape does not match a map {domain} -> {codomain}"
            )));
        }
        let matrix = (0..codomain.ngens())
            .map(|i| {
                let d = codomain.modulus(i);
                matrix[i].iter().map(|&x| if d == 0 { x } else { x.rem_euclid(d) }).collect()
            })
            .collect();
        let h = Self { domain, codomain, matrix };
        for j in h.domain.free_rank..h.domain.ngens() {
            let d = h.domain.modulus(j);
            let image = h.codomain.scale(d, &h.column(j))?;
            if image != h.codomain.zero() {
                return Err(input(format!(
                    "not well defined: generator {j} has order {d} but its image {:?} does not",
                    h.column(j)
                )));
            }
        }
        Ok(h)
    }

    /// The homomorphism sending generator `j` to `images[j]`.
    pub fn from_images(domain: FinAbGroup, codomain: FinAbGroup, images: &[Element]) -> Result<Self> {
        if images.len() != domain.ngens() {
            return Err(input("one image per domain generator is required"));
        }
        let matrix = (0..codomain.ngens())
            .map(|i| images.iter().map(|x| x.get(i).copied().unwrap_or(0)).collect())
            .collect();
        Self::new(domain, codomain, matrix)
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        Self { domain: g.clone(), codomain: g.clone(), matrix: identity(g.ngens()) }
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> Element {
        self.matrix.iter().map(|r| r[j]).collect()
    }

    pub fn apply(&self, x: &[i64]) -> Result<Element> {
        let x = self.domain.reduce(x)?;
        let y: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x)
                    .try_fold(0i64, |acc, (&a, &b)| ck_add(acc, ck_mul(a, b)?))
            })
            .collect::<Result<_>>()?;
        self.codomain.reduce(&y)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom> {
        if self.codomain != other.domain {
            return Err(input(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        let m = mat_mul(&other.matrix, &self.matrix, self.codomain.ngens())?;
        AbHom::new(self.domain.clone(), other.codomain.clone(), m)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        if !self.codomain.is_finite() {
            return Err(crate::error::capability("surjectivity onto an infinite group"));
        }
        let gens: Vec<Element> = (0..self.domain.ngens()).map(|j| self.column(j)).collect();
        let span = subgroup_generated(&self.codomain, &gens)?;
        Ok(span.len().map(|n| n as u64) == self.codomain.order())
    }

    /// Inverse of a bijection between finite groups.
    pub fn inverse(&self) -> Result<AbHom> {
        let targets = self.codomain.elements()?;
        let sources = self.domain.elements()?;
        if targets.len() != sources.len() {
            return Err(input("map between groups of different order is not invertible"));
        }
        let mut images = Vec::with_capacity(self.codomain.ngens());
        for j in 0..self.codomain.ngens() {
            let e = self.codomain.basis(j);
            let mut found = None;
            for s in &sources {
                if self.apply(s)? == e {
                    found = Some(s.clone());
                    break;
                }
            }
            images.push(found.ok_or_else(|| input("map is not surjective"))?);
        }
        let inv = AbHom::from_images(self.codomain.clone(), self.domain.clone(), &images)?;
        if self.then(&inv)? != AbHom::identity(&self.domain) {
            return Err(input("map is not injective"));
        }
        Ok(inv)
    }
}

/// `Z^n / R` together with its projection and a chosen lift of every
/// generator of the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    pub projection: AbHom,
    pub lifts: Vec<Element>,
}

impl Cokernel {
    pub fn group(&self) -> &FinAbGroup {
        self.projection.codomain()
    }

    /// Replaces the coordinates of the quotient by `iso ∘ old`.
    pub fn recoordinate(&self, iso: &AbHom) -> Result<Cokernel> {
        let inv = iso.inverse()?;
        let projection = self.projection.then(iso)?;
        let lifts = (0..iso.codomain().ngens())
            .map(|j| {
                // lift of new generator j = combination of old lifts
                let old = inv.column(j);
                let n = self.projection.domain().ngens();
                let mut acc = vec![0i64; n];
                for (k, &c) in old.iter().enumerate() {
                    for (a, &b) in acc.iter_mut().zip(&self.lifts[k]) {
                        *a = ck_add(*a, ck_mul(c, b)?)?;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Ok(Cokernel { projection, lifts })
    }

    /// The homomorphism `group -> target` sending the class of basis vector
    /// `i` of `Z^n` to `values[i]`, if those values respect every relation.
    pub fn descend(&self, target: &FinAbGroup, values: &[Element]) -> Result<AbHom> {
        let n = self.projection.domain().ngens();
        if values.len() != n {
            return Err(input(format!("expected {n} values, got {}", values.len())));
        }
        let on_free = AbHom::from_images(FinAbGroup::free(n), target.clone(), values)?;
        let images: Vec<Element> = self
            .lifts
            .iter()
            .map(|l| on_free.apply(l))
            .collect::<Result<_>>()?;
        let h = AbHom::from_images(self.group().clone(), target.clone(), &images)?;
        for i in 0..n {
            let e = FinAbGroup::free(n).basis(i);
            if h.apply(&self.projection.apply(&e)?)? != on_free.apply(&e)? {
                return Err(input(format!("values do not factor through the quotient at basis vector {i}")));
            }
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_construction() {
        assert!(FinAbGroup::new(0, vec![2, 3]).is_err());
        assert!(FinAbGroup::new(0, vec![1]).is_err());
        let g = FinAbGroup::new(1, vec![2, 4]).unwrap();
        assert_eq!(g.to_string(), "Z x Z/2 x Z/4");
        assert_eq!(g.order(), None);
        assert_eq!(FinAbGroup::trivial().order(), Some(1));
        assert_eq!(FinAbGroup::trivial().elements().unwrap(), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn reduction_and_order() {
        let g = FinAbGroup::new(0, vec![2, 4]).unwrap();
        assert_eq!(g.reduce(&[3, -1]).unwrap(), vec![1, 3]);
        assert_eq!(g.element_order(&[1, 2]).unwrap(), Some(2));
        assert_eq!(g.element_order(&[0, 1]).unwrap(), Some(4));
        assert_eq!(g.elements().unwrap().len(), 8);
        assert!(g.reduce(&[1]).is_err());
    }

    #[test]
    fn cokernel_of_diag() {
        let c = FinAbGroup::cokernel(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(c.group(), &FinAbGroup::new(0, vec![6]).unwrap());
        for (j, l) in c.lifts.iter().enumerate() {
            assert_eq!(c.projection.apply(l).unwrap(), c.group().basis(j));
        }
        let free = FinAbGroup::cokernel(3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(free.group(), &FinAbGroup::free(2));
        let none = FinAbGroup::cokernel(2, &[]).unwrap();
        assert_eq!(none.group(), &FinAbGroup::free(2));
    }

    #[test]
    fn hom_well_definedness() {
        let z4 = FinAbGroup::cyclic(4).unwrap();
        let z2 = FinAbGroup::cyclic(2).unwrap();
        assert!(AbHom::new(z4.clone(), z2.clone(), vec![vec![1]]).is_ok());
        assert!(AbHom::new(z2.clone(), z4.clone(), vec![vec![1]]).is_err());
        assert!(AbHom::new(z2.clone(), z4.clone(), vec![vec![2]]).is_ok());
        let z = FinAbGroup::free(1);
        assert!(AbHom::new(z2, z, vec![vec![1]]).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let neg = AbHom::new(z3.clone(), z3.clone(), vec![vec![2]]).unwrap();
        assert_eq!(neg.then(&neg).unwrap(), AbHom::identity(&z3));
        assert_eq!(neg.inverse().unwrap(), neg);
        let zero = AbHom::new(z3.clone(), z3.clone(), vec![vec![0]]).unwrap();
        assert!(zero.inverse().is_err());
        assert!(!zero.is_surjective().unwrap());
        assert!(neg.is_surjective().unwrap());
    }

    #[test]
    fn descend_respects_relations() {
        // Z^2 / <(2,-1)> ≅ Z, e1 ↦ 1, e2 ↦ 2
        let c = FinAbGroup::cokernel(2, &[vec![2, -1]]).unwrap();
        let z2 = FinAbGroup::cyclic(2).unwrap();
        assert!(c.descend(&z2, &[vec![1], vec![0]]).is_ok());
        assert!(c.descend(&z2, &[vec![1], vec![1]]).is_err());
    }

    #[test]
    fn overflow_detected() {
        let z = FinAbGroup::free(1);
        let h = AbHom::new(z.clone(), z, vec![vec![i64::MAX]]).unwrap();
        assert_eq!(h.apply(&[2]).unwrap_err(), Error::Overflow(CTX));
    }
}
