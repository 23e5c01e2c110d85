//! Γ-actions on the Dynkin diagram that factor through a diagram
//! automorphism of order at most 2, and the induced action on `C*`.

use crate::abgroup::{subgroup_generated, AbHom, FinAbGroup, Subset};
use crate::error::{capability, input, Result};
use crate::rootdata::{DiagramAut, Kind, RootSystem, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisAction {
    generator: DiagramAut,
    induced: AbHom,
    mu_twist: Option<AbHom>,
}

impl GaloisAction {
    pub fn new(rs: &RootSystem, generator: DiagramAut) -> Result<Self> {
        if generator.rank() != rs.rank() {
            return Err(input("automorphism rank does not match the root system"));
        }
        if !generator.then(&generator).is_identity() {
            return Err(capability(format!(
                "Galois actions through {generator} (order {}) are not supported; only order <= 2",
                generator.order()
            )));
        }
        let induced = rs.induced_center_action(&generator)?;
        Ok(Self { generator, induced, mu_twist: None })
    }

    /// The trivial action (inner forms).
    pub fn inner(rs: &RootSystem) -> Self {
        Self {
            generator: DiagramAut::identity(rs.rank()),
            induced: AbHom::identity(rs.center()),
            mu_twist: None,
        }
    }

    /// The outer action: the flip of `A_n` or `E6`, the fork swap of `D_n`.
    pub fn outer(rs: &RootSystem) -> Result<Self> {
        let n = rs.rank();
        let sigma = match rs.kind() {
            Kind::D => DiagramAut::swap(rs.cartan(), n - 1, n)?,
            Kind::A if n >= 2 => DiagramAut::new(rs.cartan(), (1..=n).rev().collect())?,
            Kind::E if n == 6 => DiagramAut::new(rs.cartan(), vec![6, 2, 5, 4, 3, 1])?,
            _ => return Err(capability(format!("{} has no outer automorphism", rs.label()))),
        };
        Self::new(rs, sigma)
    }

    /// Attaches an explicit action on `μ(−1)`; without one it is trivial.
    pub fn with_mu_twist(mut self, twist: AbHom) -> Result<Self> {
        if twist.domain() != twist.codomain() {
            return Err(input("the action on μ(−1) must be an endomorphism"));
        }
        if twist.then(&twist)? != AbHom::identity(twist.domain()) {
            return Err(input("the action on μ(−1) must be an involution"));
        }
        self.mu_twist = Some(twist);
        Ok(self)
    }

    pub fn generator(&self) -> &DiagramAut {
        &self.generator
    }

    pub fn induced(&self) -> &AbHom {
        &self.induced
    }

    pub fn is_inner(&self) -> bool {
        self.generator.is_identity()
    }

    pub fn orbit_of(&self, v: usize) -> VertexSet {
        VertexSet::EMPTY.with(v).with(self.generator.apply(v))
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        self.generator.apply_set(s) == s
    }

    /// Γ-stable subsets of `1..=rank` in increasing mask order.
    pub fn stable_subsets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        VertexSet::all_subsets(self.generator.rank()).filter(|s| self.is_stable(*s))
    }

    /// The Γ-orbits contained in `subset`. A vertex whose orbit leaves the
    /// subset contributes nothing.
    pub fn orbits(&self, subset: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut seen = VertexSet::EMPTY;
        for v in subset.iter() {
            if seen.contains(v) {
                continue;
            }
            let orbit = self.orbit_of(v);
            seen = seen.union(orbit);
            if orbit.is_subset(subset) {
                out.push(orbit);
            }
        }
        out
    }

    /// `C*^Γ`.
    pub fn fixed_subgroup(&self) -> Result<Subset> {
        let g = self.induced.domain();
        let fixed = g
            .elements()?
            .into_iter()
            .filter(|x| self.induced.apply(x).is_ok_and(|y| y == *x));
        Subset::from_elements(g, fixed)
    }

    /// `μ(−1)^Γ`.
    pub fn mu_fixed(&self, mu: &FinAbGroup) -> Result<Subset> {
        match &self.mu_twist {
            None => Subset::whole(mu),
            Some(t) if t.domain() == mu => {
                let fixed = mu
                    .elements()?
                    .into_iter()
                    .filter(|x| t.apply(x).is_ok_and(|y| y == *x));
                Subset::from_elements(mu, fixed)
            }
            Some(_) => Err(input("μ(−1) action is attached to a different group")),
        }
    }

    /// Subgroup of `C*` generated by the orbit sums of the restrictions over
    /// the orbits inside `complement`.
    pub fn orbit_sum_subgroup(&self, rs: &RootSystem, complement: VertexSet) -> Result<Subset> {
        let g = rs.center();
        let sums = self
            .orbits(complement)
            .into_iter()
            .map(|orbit| {
                orbit
                    .iter()
                    .try_fold(g.zero(), |acc, v| g.add(&acc, &rs.restriction(v)))
            })
            .collect::<Result<Vec<_>>>()?;
        subgroup_generated(g, &sums)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn orbit_examples() {
        let e6 = RootSystem::new(Kind::E, 6).unwrap();
        let inner = GaloisAction::inner(&e6);
        assert_eq!(inner.orbits(set(&[1, 6])), vec![set(&[1]), set(&[6])]);

        let d6 = RootSystem::new(Kind::D, 6).unwrap();
        let outer = GaloisAction::outer(&d6).unwrap();
        assert_eq!(outer.orbits(set(&[5, 6])), vec![set(&[5, 6])]);
        assert!(outer.orbits(set(&[5])).is_empty());
        assert_eq!(outer.orbits(set(&[1, 5])), vec![set(&[1])]);
    }

    #[test]
    fn fixed_subgroups() {
        let d6 = RootSystem::new(Kind::D, 6).unwrap();
        assert_eq!(GaloisAction::inner(&d6).fixed_subgroup().unwrap().len(), Some(4));
        let fixed = GaloisAction::outer(&d6).unwrap().fixed_subgroup().unwrap();
        let names: Vec<String> = fixed.iter().map(|x| d6.name_of(x)).collect();
        assert_eq!(names, ["0", "chi"]);

        let e6 = RootSystem::new(Kind::E, 6).unwrap();
        let fixed = GaloisAction::outer(&e6).unwrap().fixed_subgroup().unwrap();
        assert_eq!(fixed.iter().cloned().collect::<Vec<_>>(), vec![vec![0]]);

        let d5 = RootSystem::new(Kind::D, 5).unwrap();
        let fixed = GaloisAction::outer(&d5).unwrap().fixed_subgroup().unwrap();
        let names: Vec<String> = fixed.iter().map(|x| d5.name_of(x)).collect();
        assert_eq!(names, ["0", "chi"]);
    }

    #[test]
    fn triality_rejected() {
        let d4 = RootSystem::new(Kind::D, 4).unwrap();
        let three = d4.automorphisms().into_iter().find(|a| a.order() == 3).unwrap();
        assert!(matches!(GaloisAction::new(&d4, three), Err(crate::Error::Capability(_))));
        assert!(GaloisAction::outer(&d4).is_ok());
        let e7 = RootSystem::new(Kind::E, 7).unwrap();
        assert!(GaloisAction::outer(&e7).is_err());
    }

    #[test]
    fn orbits_partition_stable_part() {
        for (k, n) in [(Kind::D, 5), (Kind::E, 6), (Kind::A, 4)] {
            let rs = RootSystem::new(k, n).unwrap();
            for action in [GaloisAction::inner(&rs), GaloisAction::outer(&rs).unwrap()] {
                for s in VertexSet::all_subsets(n) {
                    let orbits = action.orbits(s);
                    let union = orbits.iter().fold(VertexSet::EMPTY, |a, o| a.union(*o));
                    assert_eq!(orbits.iter().map(|o| o.len()).sum::<usize>(), union.len());
                    for v in s.iter() {
                        assert_eq!(union.contains(v), action.orbit_of(v).is_subset(s));
                    }
                    if action.is_inner() {
                        assert_eq!(orbits.len(), s.len());
                    }
                }
                let fixed = action.fixed_subgroup().unwrap();
                assert!(fixed.contains(&rs.center().zero()).unwrap());
                for x in fixed.iter() {
                    for y in fixed.iter() {
                        assert!(fixed.contains(&rs.center().add(x, y).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn mu_twist_defaults_to_identity() {
        let rs = RootSystem::new(Kind::E, 7).unwrap();
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let a = GaloisAction::inner(&rs);
        assert_eq!(a.mu_fixed(&z2).unwrap().len(), Some(2));
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let neg = AbHom::new(z3.clone(), z3.clone(), vec![vec![2]]).unwrap();
        let a = a.with_mu_twist(neg).unwrap();
        assert_eq!(a.mu_fixed(&z3).unwrap().len(), Some(1));
    }
}
