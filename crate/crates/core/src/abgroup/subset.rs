use super::{smith_normal_form, AbHom, Element, FinAbGroup, IntMatrix};
use crate::error::{capability, input, Error, Result};
use std::collections::{BTreeSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetRepr {
    /// Explicit reduced elements.
    Finite(BTreeSet<Element>),
    /// `base + span(generators)` inside a free ambient group.
    Coset { base: Element, generators: Vec<Element> },
}

/// A subset of an abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    ambient: FinAbGroup,
    repr: SubsetRepr,
}

impl Subset {
    pub fn empty(ambient: &FinAbGroup) -> Self {
        Self { ambient: ambient.clone(), repr: SubsetRepr::Finite(BTreeSet::new()) }
    }

    pub fn from_elements<I>(ambient: &FinAbGroup, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = Element>,
    {
        let mut set = BTreeSet::new();
        for x in elements {
            ambient.check_reduced(&x)?;
            set.insert(x);
        }
        Ok(Self { ambient: ambient.clone(), repr: SubsetRepr::Finite(set) })
    }

    pub fn singleton(ambient: &FinAbGroup, x: Element) -> Result<Self> {
        Self::from_elements(ambient, [x])
    }

    pub fn whole(ambient: &FinAbGroup) -> Result<Self> {
        Self::from_elements(ambient, ambient.elements()?)
    }

    pub fn coset(ambient: &FinAbGroup, base: Element, generators: Vec<Element>) -> Result<Self> {
        if !ambient.is_finite() && ambient.invariant_factors().is_empty() {
            ambient.check_reduced(&base)?;
            let mut gens: Vec<Element> = Vec::new();
            for g in generators {
                ambient.check_reduced(&g)?;
                if g.iter().any(|&v| v != 0) {
                    gens.push(g);
                }
            }
            let mut base = base;
            if ambient.ngens() == 1 && !gens.is_empty() {
                let step = gens.iter().fold(0, |acc, g| super::gcd(acc, g[0]));
                base = vec![base[0].rem_euclid(step)];
                gens = vec![vec![step]];
            }
            if gens.is_empty() {
                return Self::singleton(ambient, base);
            }
            Ok(Self { ambient: ambient.clone(), repr: SubsetRepr::Coset { base, generators: gens } })
        } else {
            Err(capability("coset descriptions are only supported in free groups Z^r"))
        }
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn repr(&self) -> &SubsetRepr {
        &self.repr
    }

    /// Explicit elements, `None` for an infinite coset.
    pub fn elements(&self) -> Option<&BTreeSet<Element>> {
        match &self.repr {
            SubsetRepr::Finite(s) => Some(s),
            SubsetRepr::Coset { .. } => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.elements().into_iter().flatten()
    }

    /// Cardinality; infinite cosets report `None`.
    pub fn len(&self) -> Option<usize> {
        self.elements().map(BTreeSet::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        self.ambient.check_reduced(x)?;
        match &self.repr {
            SubsetRepr::Finite(s) => Ok(s.contains(x)),
            SubsetRepr::Coset { base, generators } => {
                let diff: Vec<i64> = x
                    .iter()
                    .zip(base)
                    .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::Overflow("coset membership")))
                    .collect::<Result<_>>()?;
                let span = AbHom::from_images(
                    FinAbGroup::free(generators.len()),
                    self.ambient.clone(),
                    generators,
                )?;
                Ok(solve_free(&span, &diff)?.is_some())
            }
        }
    }
}

/// Closure of `gens` under addition and negation in a finite group.
pub fn subgroup_generated(g: &FinAbGroup, gens: &[Element]) -> Result<Subset> {
    if !g.is_finite() {
        return Err(capability(format!("subgroup enumeration in the infinite group {g}")));
    }
    for x in gens {
        g.check_reduced(x)?;
    }
    let mut seen = BTreeSet::from([g.zero()]);
    let mut queue = VecDeque::from([g.zero()]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.add(&x, s)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    // in a finite group, closure under addition already contains negatives
    Ok(Subset { ambient: g.clone(), repr: SubsetRepr::Finite(seen) })
}

/// Solves `h(x) = t` for `h` with free domain. Returns one solution and a
/// generating set of the kernel.
fn solve_free(h: &AbHom, t: &[i64]) -> Result<Option<(Element, Vec<Element>)>> {
    let dom = h.domain();
    let cod = h.codomain();
    let r = dom.ngens();
    let torsion: Vec<usize> = (cod.free_rank()..cod.ngens()).collect();
    let cols = r + torsion.len();
    let rows = cod.ngens();
    if rows == 0 {
        let kernel = (0..r).map(|i| dom.basis(i)).collect();
        return Ok(Some((dom.zero(), kernel)));
    }
    let mut a: IntMatrix = vec![vec![0; cols]; rows];
    for (i, row) in a.iter_mut().enumerate() {
        row[..r].copy_from_slice(&h.matrix()[i]);
    }
    for (k, &i) in torsion.iter().enumerate() {
        a[i][r + k] = cod.modulus(i);
    }
    let snf = smith_normal_form(&a)?;
    let rank = snf.rank();
    let diag = snf.diagonal();
    let c: Vec<i64> = snf
        .u
        .iter()
        .map(|row| {
            row.iter().zip(t).try_fold(0i64, |acc, (&x, &y)| {
                acc.checked_add(x.checked_mul(y).ok_or(Error::Overflow("linear solve"))?)
                    .ok_or(Error::Overflow("linear solve"))
            })
        })
        .collect::<Result<_>>()?;
    let mut y = vec![0i64; cols];
    for i in 0..rows {
        if i < rank {
            if c[i] % diag[i] != 0 {
                return Ok(None);
            }
            y[i] = c[i] / diag[i];
        } else if c[i] != 0 {
            return Ok(None);
        }
    }
    let project = |w: &[i64]| -> Result<Element> {
        (0..r)
            .map(|i| {
                snf.v[i].iter().zip(w).try_fold(0i64, |acc, (&x, &y)| {
                    acc.checked_add(x.checked_mul(y).ok_or(Error::Overflow("linear solve"))?)
                        .ok_or(Error::Overflow("linear solve"))
                })
            })
            .collect()
    };
    let base = project(&y)?;
    let kernel = (rank..cols)
        .map(|j| {
            let mut e = vec![0i64; cols];
            e[j] = 1;
            project(&e)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((base, kernel)))
}

/// `{x : h(x) ∈ target}`.
pub fn preimage(h: &AbHom, target: &Subset) -> Result<Subset> {
    if target.ambient() != h.codomain() {
        return Err(input(format!(
            "target lives in {} but the map lands in {}",
            target.ambient(),
            h.codomain()
        )));
    }
    let dom = h.domain();
    if dom.is_finite() {
        let mut out = BTreeSet::new();
        for x in dom.elements()? {
            if target.contains(&h.apply(&x)?)? {
                out.insert(x);
            }
        }
        return Ok(Subset { ambient: dom.clone(), repr: SubsetRepr::Finite(out) });
    }
    if !dom.invariant_factors().is_empty() {
        return Err(capability(format!("preimage with mixed domain {dom}")));
    }
    match target.elements() {
        Some(s) if s.is_empty() => Ok(Subset::empty(dom)),
        Some(s) if s.len() == 1 => {
            let t = s.iter().next().cloned().unwrap_or_default();
            match solve_free(h, &t)? {
                None => Ok(Subset::empty(dom)),
                Some((base, kernel)) => Subset::coset(dom, base, kernel),
            }
        }
        _ => Err(capability(
            "preimage from an infinite domain is only supported for a single target element",
        )),
    }
}

/// `{h(x) : x ∈ source}`.
pub fn image(h: &AbHom, source: &Subset) -> Result<Subset> {
    if source.ambient() != h.domain() {
        return Err(input(format!(
            "source lives in {} but the map starts at {}",
            source.ambient(),
            h.domain()
        )));
    }
    match source.repr() {
        SubsetRepr::Finite(s) => {
            let out = s.iter().map(|x| h.apply(x)).collect::<Result<BTreeSet<_>>>()?;
            Ok(Subset { ambient: h.codomain().clone(), repr: SubsetRepr::Finite(out) })
        }
        SubsetRepr::Coset { base, generators } => {
            let b = h.apply(base)?;
            let gens = generators.iter().map(|g| h.apply(g)).collect::<Result<Vec<_>>>()?;
            let cod = h.codomain();
            if gens.iter().all(|g| g.iter().all(|&v| v == 0)) {
                return Subset::singleton(cod, b);
            }
            if !cod.is_finite() {
                return Err(capability("image of an infinite coset in an infinite group"));
            }
            let span = subgroup_generated(cod, &gens)?;
            let out = span.iter().map(|s| cod.add(&b, s)).collect::<Result<BTreeSet<_>>>()?;
            Ok(Subset { ambient: cod.clone(), repr: SubsetRepr::Finite(out) })
        }
    }
}

pub fn intersect(a: &Subset, b: &Subset) -> Result<Subset> {
    if a.ambient() != b.ambient() {
        return Err(input(format!(
            "cannot intersect subsets of {} and {}",
            a.ambient(),
            b.ambient()
        )));
    }
    match (a.elements(), b.elements()) {
        (Some(x), Some(y)) => Ok(Subset {
            ambient: a.ambient.clone(),
            repr: SubsetRepr::Finite(x.intersection(y).cloned().collect()),
        }),
        (Some(x), None) | (None, Some(x)) => {
            let other = if a.elements().is_some() { b } else { a };
            let mut out = BTreeSet::new();
            for e in x {
                if other.contains(e)? {
                    out.insert(e.clone());
                }
            }
            Ok(Subset { ambient: a.ambient.clone(), repr: SubsetRepr::Finite(out) })
        }
        (None, None) if a == b => Ok(a.clone()),
        (None, None) => Err(capability("intersection of two infinite cosets")),
    }
}
