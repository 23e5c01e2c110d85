//! The norm-principle calculus for an exact sequence `1 → G₁ → G → G_m → 1`.
//!
//! A [`Scenario`] packages the three maps
//!
//! ```text
//! α: Z'_*^Γ → T_* = Z      β: Z'_*^Γ → μ(−1)^Γ      γ: C_*^Γ → μ(−1)^Γ
//! ```
//!
//! and the Tits algebras of the simply connected cover of `G'`. From these
//! it computes `X(φ) = γ⁻¹(β(α⁻¹{φ}))` inside `C*^Γ` and the set `Ω(φ)` of
//! parabolic types whose orbit-sum subgroup meets `X(φ)`.

use crate::abgroup::{gcd, image, intersect, lcm, preimage, AbHom, Element, FinAbGroup, Subset};
use crate::error::{capability, input, Result};
use crate::galois::GaloisAction;
use crate::rootdata::{Kind, RootSystem, VertexSet};
use crate::titsalg::{beta_eval, tits_table, TitsAlgebraTable};
use crate::verifier::FieldState;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// An element of `T_* ≅ Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cocharacter(pub i64);

impl Cocharacter {
    pub fn value(self) -> i64 {
        self.0
    }

    pub fn residue(self, modulus: i64) -> i64 {
        self.0.rem_euclid(modulus)
    }

    pub fn is_coprime_to(self, p: i64) -> bool {
        gcd(self.0, p) == 1
    }
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Multiplies a cocharacter by a field degree: if `φ` lifts over `K` then
/// `[K:k]·φ` lifts over `k`.
pub fn scale_special(phi: Cocharacter, degree: i64) -> Result<Cocharacter> {
    if degree <= 0 {
        return Err(input(format!("field degree must be positive, got {degree}")));
    }
    phi.0
        .checked_mul(degree)
        .map(Cocharacter)
        .ok_or(crate::Error::Overflow("cocharacter scaling"))
}

/// One application of [`scale_special`] with its coprimality bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingStep {
    pub phi: i64,
    pub degree: i64,
    pub scaled: i64,
    pub coprime_before: bool,
    pub coprime_after: bool,
}

impl ScalingStep {
    pub fn new(phi: Cocharacter, degree: i64, p: i64) -> Result<Self> {
        let scaled = scale_special(phi, degree)?;
        Ok(Self {
            phi: phi.0,
            degree,
            scaled: scaled.0,
            coprime_before: phi.is_coprime_to(p),
            coprime_after: scaled.is_coprime_to(p),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Spin,
    Gorth,
    E6,
    E7,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Spin => "spin",
            ScenarioKind::Gorth => "gorth",
            ScenarioKind::E6 => "e6",
            ScenarioKind::E7 => "e7",
        }
    }

    pub fn needs_rank(self) -> bool {
        matches!(self, ScenarioKind::Spin | ScenarioKind::Gorth)
    }
}

impl FromStr for ScenarioKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spin" => Ok(ScenarioKind::Spin),
            "gorth" => Ok(ScenarioKind::Gorth),
            "e6" => Ok(ScenarioKind::E6),
            "e7" => Ok(ScenarioKind::E7),
            _ => Err(input(format!("unknown scenario {s:?}; expected spin, gorth, e6 or e7"))),
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Descriptive names of the groups in the sequence; not used in computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioMeta {
    pub group: String,
    pub kernel: String,
    pub derived: String,
    pub center: String,
    pub abelianization: String,
    pub mu: String,
    pub map: String,
}

fn meta(group: &str, kernel: &str, derived: &str, mu: &str, map: &str) -> ScenarioMeta {
    ScenarioMeta {
        group: group.into(),
        kernel: kernel.into(),
        derived: derived.into(),
        center: "Gm".into(),
        abelianization: "Gm".into(),
        mu: mu.into(),
        map: map.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    kind: ScenarioKind,
    p: i64,
    mirror: bool,
    meta: ScenarioMeta,
    rootsystem: RootSystem,
    mu_twist: FinAbGroup,
    alpha: AbHom,
    beta: AbHom,
    gamma: AbHom,
    tits: TitsAlgebraTable,
    inner: GaloisAction,
    outer: Option<GaloisAction>,
}

impl Scenario {
    /// `1 → Spin(A,σ) → Γ(A,σ) → G_m → 1` with the spinor norm, `p = 2`.
    pub fn spin(rank: usize) -> Result<Self> {
        let rs = orthogonal_root_system(rank)?;
        let c = rs.center().clone();
        let beta = AbHom::from_images(FinAbGroup::free(1), c.clone(), &[rs.restriction(1)])?;
        let gamma = AbHom::identity(&c);
        let inner = GaloisAction::inner(&rs);
        Self::assemble(
            ScenarioKind::Spin,
            2,
            false,
            meta("Gamma(A,s)", "Spin(A,s)", "Spin(A,s)", "C", "spinor norm"),
            rs,
            c,
            beta,
            gamma,
            inner,
            None,
        )
    }

    /// `1 → O⁺(A,σ) → GO⁺(A,σ) → G_m → 1` with the multiplier, `p = 2`.
    /// The Galois action is the fork swap exactly when the discriminant is
    /// nontrivial.
    pub fn gorth(rank: usize) -> Result<Self> {
        let rs = orthogonal_root_system(rank)?;
        let mu = FinAbGroup::cyclic(2)?;
        let beta = AbHom::from_images(FinAbGroup::free(1), mu.clone(), &[vec![1]])?;
        // kernel {0, chi}: the chain vertices die, the fork vertices map to 1
        let values: Vec<Element> = (1..=rank).map(|i| vec![i64::from(i + 1 >= rank)]).collect();
        let gamma = rs.hom_from_vertex_values(&mu, &values)?;
        let inner = GaloisAction::inner(&rs);
        let outer = GaloisAction::outer(&rs)?;
        Self::assemble(
            ScenarioKind::Gorth,
            2,
            false,
            meta("GO+(A,s)", "O+(A,s)", "O+(A,s)", "mu2", "multiplier"),
            rs,
            mu,
            beta,
            gamma,
            inner,
            Some(outer),
        )
    }

    /// Similitudes of an Albert algebra, `p = 3`. With `mirror` the roles of
    /// vertices 1 and 6 (and of `g`, `2g`) are exchanged.
    pub fn e6(mirror: bool) -> Result<Self> {
        let rs = RootSystem::new(Kind::E, 6)?;
        let c = rs.center().clone();
        let gen = rs.restriction(if mirror { 6 } else { 1 });
        let beta = AbHom::from_images(FinAbGroup::free(1), c.clone(), &[gen])?;
        let gamma = AbHom::identity(&c);
        let inner = GaloisAction::inner(&rs);
        Self::assemble(
            ScenarioKind::E6,
            3,
            mirror,
            meta("similitudes of J", "E6 (sc)", "E6 (sc)", "mu3", "multiplier"),
            rs,
            c,
            beta,
            gamma,
            inner,
            None,
        )
    }

    /// Similitudes of a gift, `p = 2`; `β` is reduction mod 2.
    pub fn e7() -> Result<Self> {
        let rs = RootSystem::new(Kind::E, 7)?;
        let c = rs.center().clone();
        let beta = AbHom::from_images(FinAbGroup::free(1), c.clone(), &[vec![1]])?;
        let gamma = AbHom::identity(&c);
        let inner = GaloisAction::inner(&rs);
        Self::assemble(
            ScenarioKind::E7,
            2,
            false,
            meta("similitudes of (A,s,pi)", "E7 (sc)", "E7 (sc)", "mu2", "multiplier"),
            rs,
            c,
            beta,
            gamma,
            inner,
            None,
        )
    }

    pub fn build(kind: ScenarioKind, rank: Option<usize>, mirror: bool) -> Result<Self> {
        let need = || input(format!("scenario {kind} needs a rank"));
        match kind {
            ScenarioKind::Spin => Self::spin(rank.ok_or_else(need)?),
            ScenarioKind::Gorth => Self::gorth(rank.ok_or_else(need)?),
            ScenarioKind::E6 => check_fixed_rank(rank, 6).and_then(|_| Self::e6(mirror)),
            ScenarioKind::E7 => check_fixed_rank(rank, 7).and_then(|_| Self::e7()),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: ScenarioKind,
        p: i64,
        mirror: bool,
        meta: ScenarioMeta,
        rootsystem: RootSystem,
        mu_twist: FinAbGroup,
        beta: AbHom,
        gamma: AbHom,
        inner: GaloisAction,
        outer: Option<GaloisAction>,
    ) -> Result<Self> {
        let tits = tits_table(rootsystem.kind(), rootsystem.rank())?;
        let alpha = AbHom::identity(&FinAbGroup::free(1));
        let s = Self { kind, p, mirror, meta, rootsystem, mu_twist, alpha, beta, gamma, tits, inner, outer };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(input(format!("p = {} is not prime", self.p)));
        }
        if self.gamma.domain() != self.rootsystem.center() || self.gamma.codomain() != &self.mu_twist {
            return Err(input("gamma must map C* to mu(-1)"));
        }
        if self.beta.codomain() != &self.mu_twist || self.beta.domain() != self.alpha.domain() {
            return Err(input("beta must map Z'_* to mu(-1)"));
        }
        if !self.gamma.is_surjective()? {
            return Err(input("gamma must be surjective"));
        }
        Ok(())
    }

    /// Replaces `β(1)`, given in the coordinates of `μ(−1)`.
    pub fn with_beta_image(mut self, image: Element) -> Result<Self> {
        let img = self.mu_twist.reduce(&image)?;
        self.beta = AbHom::from_images(self.alpha.domain().clone(), self.mu_twist.clone(), &[img])?;
        self.validate()?;
        Ok(self)
    }

    /// Replaces `γ` by the quotient map `C* → C*/kernel`; `μ(−1)` becomes
    /// that quotient. `β(1)` must then be supplied in the new coordinates.
    pub fn with_gamma_kernel(mut self, kernel: &[Element], beta_image: Element) -> Result<Self> {
        let c = self.rootsystem.center().clone();
        for x in kernel {
            c.check_reduced(x)?;
        }
        let n = c.ngens();
        let mut rels: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.modulus(i) } else { 0 }).collect())
            .collect();
        rels.extend(kernel.iter().cloned());
        let quotient = FinAbGroup::cokernel(n, &rels)?;
        let images: Vec<Element> = (0..n).map(|j| quotient.projection.column(j)).collect();
        let mu = quotient.group().clone();
        self.gamma = AbHom::from_images(c, mu.clone(), &images)?;
        self.mu_twist = mu;
        self.with_beta_image(beta_image)
    }

    /// Adds relations among the Brauer generators of the Tits algebras.
    pub fn with_relations(mut self, relations: Vec<Vec<i64>>) -> Result<Self> {
        self.tits = self.tits.with_relations(relations)?;
        Ok(self)
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rootsystem.rank()
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirror
    }

    pub fn meta(&self) -> &ScenarioMeta {
        &self.meta
    }

    pub fn rootsystem(&self) -> &RootSystem {
        &self.rootsystem
    }

    pub fn mu_twist(&self) -> &FinAbGroup {
        &self.mu_twist
    }

    pub fn alpha(&self) -> &AbHom {
        &self.alpha
    }

    pub fn beta(&self) -> &AbHom {
        &self.beta
    }

    pub fn gamma(&self) -> &AbHom {
        &self.gamma
    }

    pub fn tits(&self) -> &TitsAlgebraTable {
        &self.tits
    }

    /// Whether the discriminant flag changes anything in this scenario.
    pub fn has_disc_choice(&self) -> bool {
        self.outer.is_some()
    }

    /// The Galois action for a field with the given discriminant flag.
    pub fn galois_selector(&self, disc_trivial: bool) -> &GaloisAction {
        match &self.outer {
            Some(outer) if !disc_trivial => outer,
            _ => &self.inner,
        }
    }

    /// `X(φ)` only depends on `φ` modulo this period.
    pub fn phi_period(&self) -> Result<i64> {
        let a = self.alpha.matrix()[0][0].abs().max(1);
        let ord = self.mu_twist.element_order(&self.beta.column(0))?.unwrap_or(1);
        lcm(a, ord)
    }

    /// Cocharacters are quantified over residues modulo `lcm(p, period)`.
    pub fn residue_modulus(&self) -> Result<i64> {
        lcm(self.p, self.phi_period()?)
    }

    /// Residues coprime to `p`, ascending.
    pub fn coprime_residues(&self) -> Result<Vec<Cocharacter>> {
        let m = self.residue_modulus()?;
        Ok((1..=m).map(Cocharacter).filter(|c| c.is_coprime_to(self.p)).collect())
    }

    /// Display name of an element of `C*`.
    pub fn name_of(&self, x: &[i64]) -> String {
        self.rootsystem.name_of(x)
    }

    pub fn names_of(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|x| self.name_of(x)).collect()
    }
}

fn check_fixed_rank(rank: Option<usize>, expected: usize) -> Result<()> {
    match rank {
        Some(r) if r != expected => Err(input(format!("this scenario has rank {expected}, not {r}"))),
        _ => Ok(()),
    }
}

fn orthogonal_root_system(rank: usize) -> Result<RootSystem> {
    if rank < 3 {
        return Err(capability(format!(
            "orthogonal scenarios need rank n >= 3 (degree 2n >= 6), got {rank}"
        )));
    }
    RootSystem::new(Kind::D, rank)
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Every stage of the computation of `X(φ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPhi {
    pub phi: Cocharacter,
    pub residue: i64,
    pub alpha_preimage: Subset,
    pub beta_image: Subset,
    pub gamma_preimage: Subset,
    pub fixed: Subset,
    pub result: Subset,
}

/// `X(φ) = γ⁻¹(β(α⁻¹{φ})) ∩ C*^Γ`.
pub fn x_phi(s: &Scenario, disc_trivial: bool, phi: Cocharacter) -> Result<XPhi> {
    let action = s.galois_selector(disc_trivial);
    let t = s.alpha.codomain();
    let alpha_preimage = preimage(&s.alpha, &Subset::singleton(t, vec![phi.0])?)?;
    let beta_image = intersect(&image(&s.beta, &alpha_preimage)?, &action.mu_fixed(&s.mu_twist)?)?;
    let gamma_preimage = preimage(&s.gamma, &beta_image)?;
    let fixed = action.fixed_subgroup()?;
    let result = intersect(&gamma_preimage, &fixed)?;
    Ok(XPhi {
        phi,
        residue: phi.residue(s.phi_period()?),
        alpha_preimage,
        beta_image,
        gamma_preimage,
        fixed,
        result,
    })
}

/// `Ω(φ)` as a membership table over all subsets `Θ ⊆ Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Omega {
    rank: usize,
    members: Vec<bool>,
}

impl Omega {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, theta: VertexSet) -> bool {
        self.members[theta.mask() as usize]
    }

    pub fn members(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| VertexSet::from_mask(i as u32))
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The minimal complements `Δ∖Θ` over `Θ ∈ Ω`; since `Ω` is closed under
    /// shrinking `Θ`, these determine it.
    pub fn minimal_complements(&self) -> Vec<VertexSet> {
        let comps: Vec<VertexSet> = self.members().map(|t| t.complement(self.rank)).collect();
        let mut out: Vec<VertexSet> = comps
            .iter()
            .copied()
            .filter(|c| !comps.iter().any(|d| d != c && d.is_subset(*c)))
            .collect();
        out.sort_by_key(|c| (c.len(), c.iter().collect::<Vec<_>>()));
        out
    }

    /// `Θ' ∈ Ω` and `Θ ⊆ Θ'` imply `Θ ∈ Ω`.
    pub fn is_downward_closed(&self) -> bool {
        self.members().all(|t| {
            t.iter().all(|v| self.contains(VertexSet::from_mask(t.mask() & !(1 << (v - 1)))))
        })
    }
}

/// `Ω(φ)`: all `Θ` whose orbit-sum subgroup over `Δ∖Θ` meets `x`.
pub fn omega(rs: &RootSystem, action: &GaloisAction, x: &Subset) -> Result<Omega> {
    if x.ambient() != rs.center() {
        return Err(input("X must be a subset of C*"));
    }
    let fixed = action.fixed_subgroup()?;
    for e in x.iter() {
        if !fixed.contains(e)? {
            return Err(input(format!("{} is not fixed by the Galois action", rs.name_of(e))));
        }
    }
    let n = rs.rank();
    let members = (0..=VertexSet::full(n).mask())
        .into_par_iter()
        .map(|mask| {
            let complement = VertexSet::from_mask(mask).complement(n);
            let span = action.orbit_sum_subgroup(rs, complement)?;
            Ok(!intersect(&span, x)?.is_empty())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(Omega { rank: n, members })
}

/// A Tits index: the Γ-stable set of distinguished vertices. A parabolic of
/// type `Θ` is defined over the field iff `Θ` is Γ-stable and
/// `Δ∖Θ ⊆ distinguished`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TitsIndex {
    distinguished: VertexSet,
}

impl TitsIndex {
    pub fn new(distinguished: VertexSet, action: &GaloisAction) -> Result<Self> {
        if !distinguished.is_subset(VertexSet::full(action.generator().rank())) {
            return Err(input(format!("{distinguished} is not a set of vertices")));
        }
        if !action.is_stable(distinguished) {
            return Err(input(format!("{distinguished} is not stable under the Galois action")));
        }
        Ok(Self { distinguished })
    }

    pub fn distinguished(&self) -> VertexSet {
        self.distinguished
    }

    pub fn is_anisotropic(&self) -> bool {
        self.distinguished.is_empty()
    }

    pub fn defines_parabolic(&self, theta: VertexSet, rank: usize, action: &GaloisAction) -> bool {
        action.is_stable(theta) && theta.complement(rank).is_subset(self.distinguished)
    }

    /// The smallest type defined over the field.
    pub fn minimal_type(&self, rank: usize) -> VertexSet {
        self.distinguished.complement(rank)
    }
}

/// Whether some parabolic defined over the field has its type in `Ω`.
/// Because `Ω` is closed under shrinking `Θ`, testing the minimal type
/// `Δ∖distinguished` suffices.
pub fn is_f_special(index: &TitsIndex, omega: &Omega, action: &GaloisAction) -> bool {
    let theta = index.minimal_type(omega.rank());
    index.defines_parabolic(theta, omega.rank(), action) && omega.contains(theta)
}

/// Cached `X(φ)` and `Ω(φ)` for every discriminant flag and coprime residue
/// of a scenario.
#[derive(Debug, Clone)]
pub struct PhiTable {
    residues: Vec<Cocharacter>,
    entries: Vec<(bool, Cocharacter, XPhi, Omega)>,
}

impl PhiTable {
    pub fn new(s: &Scenario) -> Result<Self> {
        let residues = s.coprime_residues()?;
        let discs: &[bool] = if s.has_disc_choice() { &[true, false] } else { &[true] };
        let mut entries = Vec::new();
        for &disc in discs {
            let action = s.galois_selector(disc);
            for &phi in &residues {
                let x = x_phi(s, disc, phi)?;
                let om = omega(s.rootsystem(), action, &x.result)?;
                entries.push((disc, phi, x, om));
            }
        }
        Ok(Self { residues, entries })
    }

    pub fn residues(&self) -> &[Cocharacter] {
        &self.residues
    }

    pub fn get(&self, disc_trivial: bool, phi: Cocharacter) -> Option<(&XPhi, &Omega)> {
        let disc = if self.entries.iter().any(|e| !e.0) { disc_trivial } else { true };
        self.entries
            .iter()
            .find(|e| e.0 == disc && e.1 == phi)
            .map(|e| (&e.2, &e.3))
    }
}

/// An admissible state and coprime cocharacter where `φ` is f-special but
/// `0 ∉ β(X(φ))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma4Violation {
    pub state: usize,
    pub phi: i64,
}

/// Checks that f-specialness forces `0 ∈ β(X(φ))` on every listed state.
pub fn lemma4_consistency(s: &Scenario, states: &[FieldState]) -> Result<Vec<Lemma4Violation>> {
    let table = PhiTable::new(s)?;
    let mut out = Vec::new();
    for (serial, st) in states.iter().enumerate() {
        let action = s.galois_selector(st.disc_trivial);
        for &phi in table.residues() {
            let (x, om) = table
                .get(st.disc_trivial, phi)
                .ok_or_else(|| input("missing cached X(phi)"))?;
            if is_f_special(&st.index, om, action) && !beta_eval(&x.result, s.tits(), &st.splitness)? {
                out.push(Lemma4Violation { state: serial, phi: phi.0 });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn xnames(s: &Scenario, disc: bool, phi: i64) -> Vec<String> {
        s.names_of(&x_phi(s, disc, Cocharacter(phi)).unwrap().result)
    }

    #[test]
    fn x_phi_fixtures() {
        for n in 3..=8 {
            let spin = Scenario::spin(n).unwrap();
            assert_eq!(xnames(&spin, true, 1), ["chi"], "spin D{n}");
            assert_eq!(xnames(&spin, true, 2), ["0"], "spin D{n}");
            let gorth = Scenario::gorth(n).unwrap();
            assert!(xnames(&gorth, false, 1).is_empty());
            assert_eq!(xnames(&gorth, true, 1), ["chi+", "chi-"], "gorth D{n}");
        }
        let e6 = Scenario::e6(false).unwrap();
        assert_eq!(xnames(&e6, true, 1), ["g"]);
        assert_eq!(xnames(&e6, true, 2), ["2g"]);
        assert_eq!(xnames(&e6, true, 4), ["g"]);
        let e6m = Scenario::e6(true).unwrap();
        assert_eq!(xnames(&e6m, true, 1), ["2g"]);
        let e7 = Scenario::e7().unwrap();
        assert_eq!(xnames(&e7, true, 1), ["chi"]);
        assert_eq!(xnames(&e7, true, -3), ["chi"]);
    }

    #[test]
    fn x_phi_stages() {
        let e6 = Scenario::e6(false).unwrap();
        let x = x_phi(&e6, true, Cocharacter(4)).unwrap();
        assert_eq!(x.alpha_preimage, Subset::singleton(&FinAbGroup::free(1), vec![4]).unwrap());
        assert_eq!(x.beta_image.iter().cloned().collect::<Vec<_>>(), vec![vec![1]]);
        assert_eq!(x.residue, 1);
    }

    #[test]
    fn scenario_metadata() {
        assert_eq!(Scenario::spin(5).unwrap().p(), 2);
        assert_eq!(Scenario::e6(false).unwrap().p(), 3);
        assert!(matches!(Scenario::spin(2), Err(crate::Error::Capability(_))));
        assert!(Scenario::build(ScenarioKind::Spin, None, false).is_err());
        assert!(Scenario::build(ScenarioKind::E7, Some(6), false).is_err());
        assert_eq!(Scenario::e6(false).unwrap().coprime_residues().unwrap(), vec![Cocharacter(1), Cocharacter(2)]);
        assert_eq!(Scenario::spin(5).unwrap().coprime_residues().unwrap(), vec![Cocharacter(1)]);
        assert!(!is_prime(1) && is_prime(2) && is_prime(3) && !is_prime(9));
    }

    #[test]
    fn omega_fixtures() {
        for n in 3..=8 {
            let spin = Scenario::spin(n).unwrap();
            let x = x_phi(&spin, true, Cocharacter(1)).unwrap();
            let om = omega(spin.rootsystem(), spin.galois_selector(true), &x.result).unwrap();
            assert!(om.contains(set(&[1]).complement(n)));
            assert!(!om.contains(VertexSet::full(n)));
        }
        let e7 = Scenario::e7().unwrap();
        let x = x_phi(&e7, true, Cocharacter(1)).unwrap();
        let om = omega(e7.rootsystem(), e7.galois_selector(true), &x.result).unwrap();
        assert!(!om.contains(set(&[1]).complement(7)));
        assert!(om.contains(set(&[7]).complement(7)));

        let e6 = Scenario::e6(false).unwrap();
        let x = x_phi(&e6, true, Cocharacter(1)).unwrap();
        let om = omega(e6.rootsystem(), e6.galois_selector(true), &x.result).unwrap();
        assert!(!om.contains(set(&[2, 4]).complement(6)));
        assert!(om.contains(set(&[1]).complement(6)));

        let gorth = Scenario::gorth(6).unwrap();
        let x = x_phi(&gorth, true, Cocharacter(1)).unwrap();
        let om = omega(gorth.rootsystem(), gorth.galois_selector(true), &x.result).unwrap();
        assert!(om.contains(set(&[6]).complement(6)));
        assert!(!om.contains(set(&[1]).complement(6)));
    }

    #[test]
    fn omega_minimal_complements() {
        let e6 = Scenario::e6(false).unwrap();
        let x = x_phi(&e6, true, Cocharacter(1)).unwrap();
        let om = omega(e6.rootsystem(), e6.galois_selector(true), &x.result).unwrap();
        let mins: Vec<String> = om.minimal_complements().iter().map(|c| c.to_string()).collect();
        assert_eq!(mins, ["{1}", "{3}", "{5}", "{6}"]);
        assert!(om.is_downward_closed());
    }

    #[test]
    fn omega_rejects_unfixed_x() {
        let gorth = Scenario::gorth(6).unwrap();
        let rs = gorth.rootsystem();
        let x = Subset::singleton(rs.center(), rs.restriction(5)).unwrap();
        assert!(omega(rs, gorth.galois_selector(false), &x).is_err());
    }

    #[test]
    fn f_special_examples() {
        let e7 = Scenario::e7().unwrap();
        let action = e7.galois_selector(true);
        let x = x_phi(&e7, true, Cocharacter(1)).unwrap();
        let om = omega(e7.rootsystem(), action, &x.result).unwrap();
        let aniso = TitsIndex::new(VertexSet::EMPTY, action).unwrap();
        assert!(!is_f_special(&aniso, &om, action));
        let split = TitsIndex::new(VertexSet::full(7), action).unwrap();
        assert!(is_f_special(&split, &om, action));
        let one = TitsIndex::new(set(&[1]), action).unwrap();
        assert!(!is_f_special(&one, &om, action));
        let seven = TitsIndex::new(set(&[7]), action).unwrap();
        assert!(is_f_special(&seven, &om, action));
    }

    #[test]
    fn f_special_matches_exhaustive_search() {
        for s in [Scenario::gorth(5).unwrap(), Scenario::gorth(6).unwrap(), Scenario::e6(false).unwrap()] {
            let n = s.rank();
            for disc in [true, false] {
                let action = s.galois_selector(disc);
                for phi in 1..=3 {
                    let x = x_phi(&s, disc, Cocharacter(phi)).unwrap();
                    let om = omega(s.rootsystem(), action, &x.result).unwrap();
                    for d in action.stable_subsets() {
                        let idx = TitsIndex::new(d, action).unwrap();
                        let brute = VertexSet::all_subsets(n)
                            .any(|t| idx.defines_parabolic(t, n, action) && om.contains(t));
                        assert_eq!(is_f_special(&idx, &om, action), brute);
                    }
                }
            }
        }
    }

    #[test]
    fn unstable_index_rejected() {
        let gorth = Scenario::gorth(6).unwrap();
        assert!(TitsIndex::new(set(&[5]), gorth.galois_selector(false)).is_err());
        assert!(TitsIndex::new(set(&[5, 6]), gorth.galois_selector(false)).is_ok());
    }

    #[test]
    fn scaling() {
        assert_eq!(scale_special(Cocharacter(1), 3).unwrap(), Cocharacter(3));
        let step = ScalingStep::new(Cocharacter(1), 3, 2).unwrap();
        assert!(step.coprime_before && step.coprime_after);
        let step = ScalingStep::new(Cocharacter(1), 2, 2).unwrap();
        assert!(step.coprime_before && !step.coprime_after);
        assert!(scale_special(Cocharacter(1), 0).is_err());
        assert!(scale_special(Cocharacter(1), -2).is_err());
        assert!(scale_special(Cocharacter(i64::MAX), 2).is_err());
    }

    #[test]
    fn overrides() {
        // the gorth encoding reproduced through an explicit kernel
        let spin = Scenario::spin(6).unwrap();
        let rs = spin.rootsystem().clone();
        let chi = rs.restriction(1);
        let s = spin.with_gamma_kernel(&[chi], vec![1]).unwrap();
        assert_eq!(s.mu_twist(), &FinAbGroup::cyclic(2).unwrap());
        assert_eq!(xnames(&s, true, 1), ["chi+", "chi-"]);
        let e7 = Scenario::e7().unwrap().with_beta_image(vec![0]).unwrap();
        assert_eq!(xnames(&e7, true, 1), ["0"]);
        assert!(Scenario::e7().unwrap().with_relations(vec![vec![1, 0]]).is_err());
        let trivialised = Scenario::e7().unwrap().with_relations(vec![vec![1]]).unwrap();
        assert_eq!(trivialised.tits().label(7), "k");
    }
}
