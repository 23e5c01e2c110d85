//! Formal Brauer classes and the Tits algebras over the vertices of the
//! Dynkin diagram.
//!
//! Brauer classes carry no index arithmetic: a context is a finite abelian
//! group presented by named generators, their exponents and optional
//! relations. A field extension is modelled by a [`SplitnessPattern`], which
//! kills the split generators.

use crate::abgroup::{AbHom, Cokernel, Element, FinAbGroup, Subset};
use crate::error::{capability, input, Result};
use crate::rootdata::{Kind, RootSystem};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerContext {
    names: Vec<String>,
    exponents: Vec<i64>,
    relations: Vec<Vec<i64>>,
    quotient: Cokernel,
}

impl BrauerContext {
    pub fn new(generators: &[(&str, i64)], relations: Vec<Vec<i64>>) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|(n, _)| n.to_string()).collect();
        let exponents: Vec<i64> = generators.iter().map(|&(_, e)| e).collect();
        if let Some((n, e)) = generators.iter().find(|(_, e)| *e < 1) {
            return Err(input(format!("generator {n} has exponent {e}; exponents must be >= 1")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(input(format!("duplicate generator name {n}")));
            }
        }
        let g = names.len();
        if let Some(r) = relations.iter().find(|r| r.len() != g) {
            return Err(input(format!("relation {r:?} must have {g} coefficients")));
        }
        let quotient = Self::present(&exponents, &relations, &[])?;
        Ok(Self { names, exponents, relations, quotient })
    }

    fn present(exponents: &[i64], relations: &[Vec<i64>], killed: &[usize]) -> Result<Cokernel> {
        let g = exponents.len();
        let mut rels: Vec<Vec<i64>> = exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| (0..g).map(|j| if i == j { e } else { 0 }).collect())
            .collect();
        rels.extend(relations.iter().cloned());
        rels.extend(killed.iter().map(|&i| (0..g).map(|j| i64::from(i == j)).collect()));
        FinAbGroup::cokernel(g, &rels)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    /// The group generated by the formal classes.
    pub fn group(&self) -> &FinAbGroup {
        self.quotient.group()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Class of a formal combination of generators.
    pub fn class(&self, formal: &[i64]) -> Result<Element> {
        self.quotient.projection.apply(formal)
    }

    /// A new context with `relations` appended.
    pub fn with_relations(&self, relations: Vec<Vec<i64>>) -> Result<Self> {
        let gens: Vec<(&str, i64)> = self.names.iter().map(String::as_str).zip(self.exponents.iter().copied()).collect();
        let mut all = self.relations.clone();
        all.extend(relations);
        Self::new(&gens, all)
    }

    /// The map `Br → Br_K` killing every split generator.
    pub fn specialization(&self, pattern: &SplitnessPattern) -> Result<AbHom> {
        self.check_pattern(pattern)?;
        let killed: Vec<usize> = (0..self.ngens()).filter(|&i| pattern.split[i]).collect();
        let target = Self::present(&self.exponents, &self.relations, &killed)?;
        let values: Vec<Element> = (0..self.ngens())
            .map(|i| target.projection.column(i))
            .collect();
        self.quotient.descend(target.group(), &values)
    }

    fn check_pattern(&self, pattern: &SplitnessPattern) -> Result<()> {
        if pattern.split.len() != self.ngens() {
            return Err(input(format!(
                "splitness pattern has {} entries, context has {} generators",
                pattern.split.len(),
                self.ngens()
            )));
        }
        Ok(())
    }

    /// A pattern is consistent when no generator declared nonsplit is forced
    /// to vanish by the split ones.
    pub fn is_consistent(&self, pattern: &SplitnessPattern) -> Result<bool> {
        let special = self.specialization(pattern)?;
        for i in (0..self.ngens()).filter(|&i| !pattern.split[i]) {
            let mut e = vec![0; self.ngens()];
            e[i] = 1;
            if special.apply(&self.class(&e)?)? == special.codomain().zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every consistent pattern, ordered by the binary value of the split
    /// flags with the first generator as the most significant bit.
    pub fn consistent_patterns(&self) -> Result<Vec<SplitnessPattern>> {
        let g = self.ngens();
        let mut out = Vec::new();
        for bits in 0u32..1 << g {
            let split = (0..g).map(|i| bits >> (g - 1 - i) & 1 == 1).collect();
            let p = SplitnessPattern { split };
            if self.is_consistent(&p)? {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Human-readable form of a formal combination, `k` for the trivial class.
    pub fn describe(&self, formal: &[i64]) -> String {
        let class = self.class(formal).unwrap_or_default();
        if class.iter().all(|&v| v == 0) {
            return "k".into();
        }
        let terms: Vec<String> = formal
            .iter()
            .zip(&self.names)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, n)| if c == 1 { n.clone() } else { format!("{n}^{c}") })
            .collect();
        terms.join("*")
    }

    pub fn pattern_map(&self, pattern: &SplitnessPattern) -> BTreeMap<String, String> {
        self.names
            .iter()
            .zip(&pattern.split)
            .map(|(n, &s)| (n.clone(), if s { "split" } else { "nonsplit" }.to_string()))
            .collect()
    }
}

/// Which generators of a [`BrauerContext`] split over a given field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitnessPattern {
    pub split: Vec<bool>,
}

impl SplitnessPattern {
    pub fn all_split(n: usize) -> Self {
        Self { split: vec![true; n] }
    }

    pub fn none_split(n: usize) -> Self {
        Self { split: vec![false; n] }
    }

    pub fn is_split(&self, i: usize) -> bool {
        self.split[i]
    }
}

impl fmt::Display for SplitnessPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.split.iter().map(|&b| if b { 's' } else { 'n' }).collect();
        f.write_str(&s)
    }
}

/// `β(ω̄ᵢ|_C)` for every vertex, as formal Brauer classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsAlgebraTable {
    rootsystem: RootSystem,
    context: BrauerContext,
    assignment: Vec<Vec<i64>>,
    beta: AbHom,
}

impl TitsAlgebraTable {
    /// Builds the table, adding to `context` the relations that make the
    /// assignment kill the root lattice (`β` is a homomorphism on `C*`).
    pub fn with_root_relations(
        rs: &RootSystem,
        context: BrauerContext,
        assignment: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = rs.rank();
        let g = context.ngens();
        if assignment.len() != n || assignment.iter().any(|a| a.len() != g) {
            return Err(input("assignment must give one formal class per vertex"));
        }
        let cartan = rs.cartan();
        let relations: Vec<Vec<i64>> = (0..n)
            .map(|j| (0..g).map(|k| (0..n).map(|i| cartan[i][j] * assignment[i][k]).sum()).collect())
            .collect();
        let context = context.with_relations(relations)?;
        Self::new(rs, context, assignment)
    }

    pub fn new(rs: &RootSystem, context: BrauerContext, assignment: Vec<Vec<i64>>) -> Result<Self> {
        let values: Vec<Element> = assignment
            .iter()
            .map(|a| context.class(a))
            .collect::<Result<_>>()?;
        let beta = rs
            .hom_from_vertex_values(context.group(), &values)
            .map_err(|e| input(format!("Tits algebra assignment is not a homomorphism on C*: {e}")))?;
        for i in 1..=rs.rank() {
            if rs.restriction(i) == rs.center().zero() && values[i - 1] != context.group().zero() {
                return Err(input(format!("vertex {i} has trivial restriction but a nontrivial algebra")));
            }
        }
        Ok(Self { rootsystem: rs.clone(), context, assignment, beta })
    }

    pub fn rootsystem(&self) -> &RootSystem {
        &self.rootsystem
    }

    pub fn context(&self) -> &BrauerContext {
        &self.context
    }

    /// Formal class over vertex `i`.
    pub fn assignment(&self, i: usize) -> &[i64] {
        &self.assignment[i - 1]
    }

    pub fn label(&self, i: usize) -> String {
        self.context.describe(self.assignment(i))
    }

    /// `β: C* → Br`.
    pub fn beta(&self) -> &AbHom {
        &self.beta
    }

    /// Replaces the Brauer context by one with extra relations.
    pub fn with_relations(&self, relations: Vec<Vec<i64>>) -> Result<Self> {
        let context = self.context.with_relations(relations)?;
        Self::new(&self.rootsystem, context, self.assignment.clone())
    }

    /// `β_K: C* → Br(K)` for the field described by `pattern`.
    pub fn beta_under(&self, pattern: &SplitnessPattern) -> Result<AbHom> {
        self.beta.then(&self.context.specialization(pattern)?)
    }
}

/// The Tits algebras of inner `D_n`, `E6` and `E7`.
pub fn tits_table(kind: Kind, rank: usize) -> Result<TitsAlgebraTable> {
    let rs = RootSystem::new(kind, rank)?;
    match (kind, rank) {
        (Kind::D, n) => {
            let context = BrauerContext::new(&[("A", 2), ("C+", 4), ("C-", 4)], vec![])?;
            let chi = rs.restriction(1);
            let zero = rs.center().zero();
            let mut assignment = Vec::with_capacity(n);
            for i in 1..=n - 2 {
                let r = rs.restriction(i);
                if r == chi {
                    assignment.push(vec![1, 0, 0]);
                } else if r == zero {
                    assignment.push(vec![0, 0, 0]);
                } else {
                    return Err(input(format!("D{n}: vertex {i} restricts to neither 0 nor chi")));
                }
            }
            assignment.push(vec![0, 1, 0]);
            assignment.push(vec![0, 0, 1]);
            TitsAlgebraTable::with_root_relations(&rs, context, assignment)
        }
        (Kind::E, 6) => {
            let context = BrauerContext::new(&[("A", 3)], vec![])?;
            let assignment = [1, 0, 2, 0, 1, 2].iter().map(|&c| vec![c]).collect();
            TitsAlgebraTable::with_root_relations(&rs, context, assignment)
        }
        (Kind::E, 7) => {
            let context = BrauerContext::new(&[("A", 2)], vec![])?;
            let assignment = (1..=7)
                .map(|i| vec![i64::from([2, 5, 7].contains(&i))])
                .collect();
            TitsAlgebraTable::with_root_relations(&rs, context, assignment)
        }
        _ => Err(capability(format!("no Tits algebra table for {}", rs.label()))),
    }
}

/// Whether `0 ∈ β_K(X)` for the field described by `pattern`.
pub fn beta_eval(x: &Subset, table: &TitsAlgebraTable, pattern: &SplitnessPattern) -> Result<bool> {
    if x.ambient() != table.rootsystem().center() {
        return Err(input(format!(
            "subset lives in {} but the table is over C* = {}",
            x.ambient(),
            table.rootsystem().center()
        )));
    }
    let beta = table.beta_under(pattern)?;
    let zero = beta.codomain().zero();
    for e in x.iter() {
        if beta.apply(e)? == zero {
            return Ok(true);
        }
    }
    Ok(false)
}
