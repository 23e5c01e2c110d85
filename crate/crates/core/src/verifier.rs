//! Exhaustive check of the two hypotheses of the degree-map divisibility
//! criterion over a finite model of field extensions.
//!
//! A field extension `K/k` is abstracted to a [`FieldState`]: the Tits
//! index of `G'_K` together with the Brauer and discriminant data over `K`. Only states passing the admissibility rules are
//! considered; the rules are exactly the classification facts used for each
//! group type. For every admissible state and every cocharacter residue
//! coprime to `p` the verifier checks
//!
//! 1. `0 ∈ β_K(X(φ))` and a parabolic with type in `Ω(φ)` imply `X(K) ≠ ∅`;
//! 2. `X(K) ≠ ∅` implies a parabolic with type in `Ω(φ)`;
//!
//! and then the equivalence "`X(K) ≠ ∅` iff every coprime `φ` is special".

use crate::error::{input, Result};
use crate::galois::GaloisAction;
use crate::normprinciple::{
    is_f_special, lemma4_consistency, Cocharacter, Lemma4Violation, PhiTable, ScalingStep, Scenario,
    ScenarioKind, TitsIndex,
};
use crate::rootdata::VertexSet;
use crate::titsalg::{beta_eval, SplitnessPattern};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldState {
    pub splitness: SplitnessPattern,
    pub disc_trivial: bool,
    pub index: TitsIndex,
}

impl FieldState {
    pub fn distinguished(&self) -> VertexSet {
        self.index.distinguished()
    }
}

/// Which admissibility rules are enforced. Tests switch rules off or force
/// extra states in to check that the verifier can refute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityRules {
    /// Tits algebras over distinguished vertices split.
    pub split_over_distinguished: bool,
    /// The per-scenario classification rule.
    pub scenario_rule: bool,
    /// States admitted regardless of the rules: (pattern, disc, distinguished).
    pub forced_admits: Vec<(SplitnessPattern, bool, VertexSet)>,
}

impl Default for AdmissibilityRules {
    fn default() -> Self {
        Self { split_over_distinguished: true, scenario_rule: true, forced_admits: Vec::new() }
    }
}

impl AdmissibilityRules {
    pub fn without_scenario_rule() -> Self {
        Self { scenario_rule: false, ..Self::default() }
    }
}

/// The vertex whose parabolic defines the variety `X`, for the scenarios
/// with a single one.
fn x_vertex(s: &Scenario) -> usize {
    match s.kind() {
        ScenarioKind::Spin => 1,
        ScenarioKind::Gorth => s.rank(),
        ScenarioKind::E6 if s.is_mirrored() => 6,
        ScenarioKind::E6 => 1,
        ScenarioKind::E7 => 7,
    }
}

/// Whether `X(K) ≠ ∅` in the given state.
pub fn x_point(s: &Scenario, state: &FieldState) -> bool {
    let d = state.distinguished();
    match s.kind() {
        ScenarioKind::Gorth => state.disc_trivial && (d.contains(s.rank() - 1) || d.contains(s.rank())),
        _ => d.contains(x_vertex(s)),
    }
}

fn a_split(s: &Scenario, pattern: &SplitnessPattern) -> bool {
    s.tits().context().index_of("A").is_some_and(|i| pattern.is_split(i))
}

fn scenario_rule_holds(s: &Scenario, pattern: &SplitnessPattern, d: VertexSet) -> bool {
    if !a_split(s, pattern) || d.is_empty() {
        return true;
    }
    match s.kind() {
        ScenarioKind::Spin => d.contains(1),
        ScenarioKind::Gorth => true,
        ScenarioKind::E6 => d.contains(x_vertex(s)) || d == [2, 4].into_iter().collect(),
        ScenarioKind::E7 => d.contains(7) || d == VertexSet::EMPTY.with(1),
    }
}

fn is_admissible(
    s: &Scenario,
    rules: &AdmissibilityRules,
    pattern: &SplitnessPattern,
    action: &GaloisAction,
    d: VertexSet,
) -> Result<bool> {
    if !action.is_stable(d) {
        return Ok(false);
    }
    if rules.split_over_distinguished {
        let beta = s.tits().beta_under(pattern)?;
        let zero = beta.codomain().zero();
        for v in d.iter() {
            if beta.apply(&s.rootsystem().restriction(v))? != zero {
                return Ok(false);
            }
        }
    }
    Ok(!rules.scenario_rule || scenario_rule_holds(s, pattern, d))
}

/// All admissible states under the standard rules.
pub fn enumerate_states(s: &Scenario) -> Result<Vec<FieldState>> {
    enumerate_states_with(s, &AdmissibilityRules::default())
}

/// All admissible states, ordered by discriminant flag (trivial first),
/// splitness pattern and distinguished mask.
pub fn enumerate_states_with(s: &Scenario, rules: &AdmissibilityRules) -> Result<Vec<FieldState>> {
    let discs: &[bool] = if s.has_disc_choice() { &[true, false] } else { &[true] };
    let patterns = s.tits().context().consistent_patterns()?;
    let mut out = Vec::new();
    for &disc in discs {
        let action = s.galois_selector(disc);
        for pattern in &patterns {
            for d in action.stable_subsets() {
                if is_admissible(s, rules, pattern, action, d)? {
                    out.push(FieldState {
                        splitness: pattern.clone(),
                        disc_trivial: disc,
                        index: TitsIndex::new(d, action)?,
                    });
                }
            }
        }
    }
    for (pattern, disc, d) in &rules.forced_admits {
        let disc = *disc || !s.has_disc_choice();
        let state = FieldState {
            splitness: pattern.clone(),
            disc_trivial: disc,
            index: TitsIndex::new(*d, s.galois_selector(disc))?,
        };
        if !out.contains(&state) {
            out.push(state);
        }
    }
    Ok(out)
}

/// Intermediate values of one condition check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionTrace {
    pub x_phi: Vec<String>,
    pub beta_zero: bool,
    pub parabolic: bool,
    pub x_point: bool,
    pub minimal_type: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionOutcome {
    pub holds: bool,
    /// The premise of the implication was false.
    pub vacuous: bool,
    pub trace: ConditionTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub x_point: bool,
    pub all_special: bool,
    pub holds: bool,
    /// Residues at which `φ` is special over the state.
    pub special: Vec<i64>,
}

/// Both condition checks per residue, then the claim, for one state.
type StateOutcome = (Vec<(Cocharacter, ConditionOutcome, ConditionOutcome)>, ClaimOutcome);

/// A scenario with its admissible states and cached `X(φ)`, `Ω(φ)`.
#[derive(Debug, Clone)]
pub struct Verifier {
    scenario: Scenario,
    table: PhiTable,
    states: Vec<FieldState>,
}

impl Verifier {
    pub fn new(scenario: Scenario) -> Result<Self> {
        Self::with_rules(scenario, &AdmissibilityRules::default())
    }

    pub fn with_rules(scenario: Scenario, rules: &AdmissibilityRules) -> Result<Self> {
        let table = PhiTable::new(&scenario)?;
        let states = enumerate_states_with(&scenario, rules)?;
        Ok(Self { scenario, table, states })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn states(&self) -> &[FieldState] {
        &self.states
    }

    pub fn residues(&self) -> &[Cocharacter] {
        self.table.residues()
    }

    fn trace(&self, state: &FieldState, phi: Cocharacter) -> Result<ConditionTrace> {
        let s = &self.scenario;
        if !phi.is_coprime_to(s.p()) {
            return Err(input(format!("cocharacter {phi} is not coprime to p = {}", s.p())));
        }
        let m = s.residue_modulus()?;
        let phi = Cocharacter(phi.residue(m));
        let (x, om) = self
            .table
            .get(state.disc_trivial, phi)
            .ok_or_else(|| input(format!("no cached X(phi) for residue {phi}")))?;
        let action = s.galois_selector(state.disc_trivial);
        Ok(ConditionTrace {
            x_phi: s.names_of(&x.result),
            beta_zero: beta_eval(&x.result, s.tits(), &state.splitness)?,
            parabolic: is_f_special(&state.index, om, action),
            x_point: x_point(s, state),
            minimal_type: state.index.minimal_type(s.rank()),
        })
    }

    /// Condition 1: `0 ∈ β_K(X(φ))` and a parabolic of type in `Ω(φ)`
    /// force `X(K) ≠ ∅`.
    pub fn check_condition1(&self, state: &FieldState, phi: Cocharacter) -> Result<ConditionOutcome> {
        let trace = self.trace(state, phi)?;
        let premise = trace.beta_zero && trace.parabolic;
        Ok(ConditionOutcome { holds: !premise || trace.x_point, vacuous: !premise, trace })
    }

    /// Condition 2: `X(K) ≠ ∅` yields a parabolic of type in `Ω(φ)`.
    pub fn check_condition2(&self, state: &FieldState, phi: Cocharacter) -> Result<ConditionOutcome> {
        let trace = self.trace(state, phi)?;
        let premise = trace.x_point;
        Ok(ConditionOutcome { holds: !premise || trace.parabolic, vacuous: !premise, trace })
    }

    /// `X(K) ≠ ∅` iff every coprime residue is special, specialness being
    /// decided by the parabolic criterion.
    pub fn check_claim(&self, state: &FieldState) -> Result<ClaimOutcome> {
        let mut special = Vec::new();
        for &phi in self.residues() {
            if self.trace(state, phi)?.parabolic {
                special.push(phi.0);
            }
        }
        let all_special = special.len() == self.residues().len();
        let xp = x_point(&self.scenario, state);
        Ok(ClaimOutcome { x_point: xp, all_special, holds: xp == all_special, special })
    }

    pub fn lemma4_violations(&self) -> Result<Vec<Lemma4Violation>> {
        lemma4_consistency(&self.scenario, &self.states)
    }

    /// For every degree `d` coprime to `p`, multiplication by `d` must
    /// permute the coprime residues; this is what turns "every coprime `φ`
    /// is special over `K`" into the same statement over `k`.
    pub fn scaling(&self) -> Result<Vec<ScalingRecord>> {
        let p = self.scenario.p();
        let m = self.scenario.residue_modulus()?;
        let residues: Vec<i64> = self.residues().iter().map(|c| c.0 % m).collect();
        let mut out = Vec::new();
        for &degree in &residues {
            let steps = self
                .residues()
                .iter()
                .map(|&phi| ScalingStep::new(phi, degree, p))
                .collect::<Result<Vec<_>>>()?;
            let mut images: Vec<i64> = steps.iter().map(|s| s.scaled.rem_euclid(m)).collect();
            images.sort_unstable();
            let mut sorted = residues.clone();
            sorted.sort_unstable();
            let bijective = images == sorted && steps.iter().all(|s| s.coprime_after);
            out.push(ScalingRecord { degree, steps, bijective });
        }
        Ok(out)
    }

    pub fn report(&self, corollary: &str) -> Result<Report> {
        let s = &self.scenario;
        let ctx = s.tits().context();
        let states: Vec<StateRecord> = self
            .states
            .iter()
            .map(|st| StateRecord {
                splitness: ctx.pattern_map(&st.splitness),
                disc: if st.disc_trivial { "trivial" } else { "nontrivial" }.into(),
                distinguished: st.distinguished(),
            })
            .collect();

        let per_state: Vec<StateOutcome> = self
            .states
            .par_iter()
            .map(|st| {
                let conds = self
                    .residues()
                    .iter()
                    .map(|&phi| Ok((phi, self.check_condition1(st, phi)?, self.check_condition2(st, phi)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((conds, self.check_claim(st)?))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut checks = Vec::new();
        let mut claims = Vec::new();
        let mut vacuity = Vacuity::default();
        let mut counterexample = None;
        for (serial, (conds, claim)) in per_state.into_iter().enumerate() {
            for (phi, c1, c2) in conds {
                if c1.vacuous {
                    vacuity.vacuous += 1;
                } else {
                    vacuity.substantive += 1;
                }
                if counterexample.is_none() && !(c1.holds && c2.holds) {
                    let condition = if c1.holds { "condition 2" } else { "condition 1" };
                    counterexample = Some(Counterexample {
                        state: serial,
                        phi: Some(phi.0),
                        condition: condition.into(),
                    });
                }
                checks.push(CheckRecord {
                    state: serial,
                    phi: phi.0,
                    cond1: c1.holds,
                    cond2: c2.holds,
                    vacuous: c1.vacuous,
                });
            }
            claims.push(ClaimRecord {
                state: serial,
                x_point: claim.x_point,
                all_special: claim.all_special,
                holds: claim.holds,
            });
        }
        if counterexample.is_none() {
            counterexample = claims.iter().find(|c| !c.holds).map(|c| Counterexample {
                state: c.state,
                phi: None,
                condition: "claim".into(),
            });
        }
        let lemma4_violations = self.lemma4_violations()?;
        if counterexample.is_none() {
            counterexample = lemma4_violations.first().map(|v| Counterexample {
                state: v.state,
                phi: Some(v.phi),
                condition: "lemma 4 consistency".into(),
            });
        }
        let scaling = self.scaling()?;
        if counterexample.is_none() && scaling.iter().any(|r| !r.bijective) {
            return Err(input("scaling by a degree coprime to p does not permute the coprime residues"));
        }
        let verdict = match counterexample {
            None => Verdict::Verified { statement: format!("deg(CH0(X)) in {}Z", s.p()) },
            Some(c) => Verdict::Refuted { counterexample: c },
        };
        let notes = self.notes(&verdict)?;
        Ok(Report {
            corollary: corollary.into(),
            scenario: s.name().into(),
            rank: s.rank(),
            p: s.p(),
            states,
            checks,
            claims,
            lemma4_violations,
            scaling,
            vacuity,
            verdict,
            notes,
        })
    }

    fn split_state(&self) -> Option<&FieldState> {
        let n = self.scenario.rank();
        self.states
            .iter()
            .find(|st| st.disc_trivial && st.splitness.split.iter().all(|&b| b) && st.distinguished() == VertexSet::full(n))
    }

    fn notes(&self, verdict: &Verdict) -> Result<Vec<String>> {
        let s = &self.scenario;
        let p = s.p();
        let m = s.residue_modulus()?;
        let mut notes = vec![format!(
            "phi ranges over residues mod {m} coprime to {p}; multiplication by any degree coprime to {p} permutes them"
        )];
        if !verdict.is_verified() {
            return Ok(notes);
        }
        let split_point = self.split_state().is_some_and(|st| x_point(s, st));
        match s.kind() {
            ScenarioKind::Spin => {
                let restricted = self
                    .states
                    .iter()
                    .filter(|st| a_split(s, &st.splitness))
                    .count();
                notes.push(format!(
                    "with A split X is a smooth even-dimensional projective quadric; {restricted} states with A split all pass, so an anisotropic quadric stays anisotropic over odd degree extensions"
                ));
            }
            ScenarioKind::Gorth => {
                notes.push("X(K) is nonempty only when disc is trivial over K".into());
            }
            ScenarioKind::E6 | ScenarioKind::E7 => {
                notes.push(format!(
                    "all Tits algebras split: split state admissible = {}, X has a point there = {split_point}; the image is then {p}Z (equality direction not checked)",
                    self.split_state().is_some()
                ));
                if s.kind() == ScenarioKind::E7 && split_point {
                    notes.push(
                        "G1 with anisotropic X does not split over an odd degree field extension".into(),
                    );
                }
            }
        }
        Ok(notes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub splitness: BTreeMap<String, String>,
    pub disc: String,
    pub distinguished: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub state: usize,
    pub phi: i64,
    pub cond1: bool,
    pub cond2: bool,
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub state: usize,
    pub x_point: bool,
    pub all_special: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRecord {
    pub degree: i64,
    pub steps: Vec<ScalingStep>,
    pub bijective: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vacuity {
    pub substantive: usize,
    pub vacuous: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub state: usize,
    pub phi: Option<i64>,
    pub condition: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Verified { statement: String },
    Refuted { counterexample: Counterexample },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub corollary: String,
    pub scenario: String,
    pub rank: usize,
    pub p: i64,
    pub states: Vec<StateRecord>,
    pub checks: Vec<CheckRecord>,
    pub claims: Vec<ClaimRecord>,
    pub lemma4_violations: Vec<Lemma4Violation>,
    pub scaling: Vec<ScalingRecord>,
    pub vacuity: Vacuity,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corollary {
    Springer,
    Bfl,
    Rost,
    Rost6,
    E7,
}

impl Corollary {
    pub const ALL: [Corollary; 5] =
        [Corollary::Springer, Corollary::Bfl, Corollary::Rost, Corollary::Rost6, Corollary::E7];

    pub fn name(self) -> &'static str {
        match self {
            Corollary::Springer => "springer",
            Corollary::Bfl => "bfl",
            Corollary::Rost => "rost",
            Corollary::Rost6 => "rost6",
            Corollary::E7 => "e7",
        }
    }

    pub fn needs_rank(self) -> bool {
        matches!(self, Corollary::Springer | Corollary::Bfl)
    }

    pub fn scenario(self, rank: Option<usize>) -> Result<Scenario> {
        match (self, rank) {
            (Corollary::Springer | Corollary::Bfl, None) => {
                Err(input(format!("corollary {} needs a rank n >= 3", self.name())))
            }
            (Corollary::Springer | Corollary::Bfl, Some(n)) if n < 3 => {
                Err(input(format!("rank {n} out of range: corollary {} needs n >= 3", self.name())))
            }
            (Corollary::Springer, Some(n)) => Scenario::spin(n),
            (Corollary::Bfl, Some(n)) => Scenario::gorth(n),
            (Corollary::Rost, r) => Scenario::build(ScenarioKind::E6, r, false),
            (Corollary::Rost6, r) => Scenario::build(ScenarioKind::E6, r, true),
            (Corollary::E7, r) => Scenario::build(ScenarioKind::E7, r, false),
        }
    }
}

impl FromStr for Corollary {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Corollary::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| input(format!("unknown corollary {s:?}; expected springer, bfl, rost, rost6 or e7")))
    }
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn verify_corollary(corollary: Corollary, rank: Option<usize>) -> Result<Report> {
    Verifier::new(corollary.scenario(rank)?)?.report(corollary.name())
}

/// Ranks covered by `verify_all` for the orthogonal corollaries.
pub const ORTHOGONAL_RANKS: std::ops::RangeInclusive<usize> = 3..=8;

/// Every corollary: the orthogonal ones for each rank in 3..=8, the
/// exceptional ones once per variety.
pub fn verify_all() -> Result<Vec<Report>> {
    let mut jobs: Vec<(Corollary, Option<usize>)> = Vec::new();
    for c in [Corollary::Springer, Corollary::Bfl] {
        jobs.extend(ORTHOGONAL_RANKS.map(|n| (c, Some(n))));
    }
    jobs.extend([(Corollary::Rost, None), (Corollary::Rost6, None), (Corollary::E7, None)]);
    jobs.into_iter().map(|(c, r)| verify_corollary(c, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn state(v: &Verifier, split: &[bool], disc: bool, d: &[usize]) -> FieldState {
        let pattern = SplitnessPattern { split: split.to_vec() };
        v.states()
            .iter()
            .find(|st| st.splitness == pattern && st.disc_trivial == disc && st.distinguished() == set(d))
            .cloned()
            .unwrap_or_else(|| panic!("state {split:?} {disc} {d:?} not admissible"))
    }

    fn is_listed(v: &Verifier, split: &[bool], disc: bool, d: &[usize]) -> bool {
        let pattern = SplitnessPattern { split: split.to_vec() };
        v.states()
            .iter()
            .any(|st| st.splitness == pattern && st.disc_trivial == disc && st.distinguished() == set(d))
    }

    #[test]
    fn e7_state_space() {
        let v = Verifier::new(Scenario::e7().unwrap()).unwrap();
        assert!(is_listed(&v, &[true], true, &[1]));
        assert!(is_listed(&v, &[true], true, &[7]));
        assert!(is_listed(&v, &[true], true, &[1, 2, 3, 4, 5, 6, 7]));
        assert!(!is_listed(&v, &[false], true, &[7]));
        assert!(!is_listed(&v, &[true], true, &[2]));
    }

    #[test]
    fn gorth_outer_states_are_stable() {
        let v = Verifier::new(Scenario::gorth(4).unwrap()).unwrap();
        for st in v.states().iter().filter(|st| !st.disc_trivial) {
            let d = st.distinguished();
            assert_eq!(d.contains(3), d.contains(4));
        }
        assert!(v.states().iter().any(|st| !st.disc_trivial));
    }

    #[test]
    fn spin_rule_excludes_isolated_even_vertex() {
        let v = Verifier::new(Scenario::spin(6).unwrap()).unwrap();
        assert!(!is_listed(&v, &[true, true, true], true, &[2]));
        assert!(is_listed(&v, &[false, false, false], true, &[2]));
    }

    #[test]
    fn condition_examples() {
        let e6 = Verifier::new(Scenario::e6(false).unwrap()).unwrap();
        let st = state(&e6, &[true], true, &[2, 4]);
        let c1 = e6.check_condition1(&st, Cocharacter(1)).unwrap();
        assert!(c1.holds && c1.vacuous && c1.trace.beta_zero && !c1.trace.parabolic);

        let gorth = Verifier::new(Scenario::gorth(6).unwrap()).unwrap();
        let st = gorth.states().iter().find(|st| !st.disc_trivial).unwrap().clone();
        let c1 = gorth.check_condition1(&st, Cocharacter(1)).unwrap();
        assert!(c1.holds && c1.vacuous && c1.trace.x_phi.is_empty());

        let spin = Verifier::new(Scenario::spin(6).unwrap()).unwrap();
        let st = state(&spin, &[true, true, true], true, &[1, 2]);
        let c1 = spin.check_condition1(&st, Cocharacter(1)).unwrap();
        assert!(c1.holds && !c1.vacuous && c1.trace.x_point);
        let c2 = spin.check_condition2(&st, Cocharacter(1)).unwrap();
        assert!(c2.holds && !c2.vacuous);

        let e7 = Verifier::new(Scenario::e7().unwrap()).unwrap();
        let st = state(&e7, &[true], true, &[7]);
        let c2 = e7.check_condition2(&st, Cocharacter(1)).unwrap();
        assert!(c2.holds && c2.trace.parabolic);
        let st = state(&e7, &[false], true, &[]);
        assert!(e7.check_condition2(&st, Cocharacter(1)).unwrap().vacuous);
        assert!(e7.check_condition1(&st, Cocharacter(2)).is_err());
    }

    #[test]
    fn claim_examples() {
        let e7 = Verifier::new(Scenario::e7().unwrap()).unwrap();
        let split = state(&e7, &[true], true, &[1, 2, 3, 4, 5, 6, 7]);
        let c = e7.check_claim(&split).unwrap();
        assert!(c.holds && c.x_point && c.all_special);
        let aniso = state(&e7, &[false], true, &[]);
        let c = e7.check_claim(&aniso).unwrap();
        assert!(c.holds && !c.x_point && !c.all_special);
        let e6 = Verifier::new(Scenario::e6(false).unwrap()).unwrap();
        let c = e6.check_claim(&state(&e6, &[true], true, &[2, 4])).unwrap();
        assert!(c.holds && !c.x_point && !c.all_special);
    }

    #[test]
    fn corollary_parsing() {
        assert_eq!("rost6".parse::<Corollary>().unwrap(), Corollary::Rost6);
        assert!("albert".parse::<Corollary>().is_err());
        assert!(verify_corollary(Corollary::Springer, None).is_err());
        assert!(verify_corollary(Corollary::Bfl, Some(2)).is_err());
    }

    #[test]
    fn weakened_e7_rule_is_refuted() {
        let v = Verifier::with_rules(Scenario::e7().unwrap(), &AdmissibilityRules::without_scenario_rule()).unwrap();
        let r = v.report("e7").unwrap();
        match r.verdict {
            Verdict::Refuted { counterexample } => assert_eq!(counterexample.condition, "condition 1"),
            Verdict::Verified { .. } => panic!("weakened rules must be refuted"),
        }
    }
}
