//! Concrete group backends with a solvable word problem.
//!
//! Every backend stores its elements in a unique normal form, so equality of
//! [`Element`] values is equality in the group and [`Element::canonical_key`]
//! is injective. The derived ordering of elements agrees with the byte order
//! of their canonical keys.
//!
//! Automorphisms act on the left: [`Backend::apply`]`(a, g)` is `a(g)`.

mod automorphism;
mod finite;
mod free;
mod monoid;

use alloc::boxed::Box;
use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write as _;

pub use automorphism::{Automorphism, AutomorphismGroup};
pub use finite::{FiniteTable, PermGroup};
pub use monoid::{monoid_balls, MonoidBallTable};

use crate::word::{is_generator_name, Word};
use crate::{Budget, Error, Result};

/// A word over generator indices, as `(generator, exponent)` pairs.
pub type Letters = Vec<(usize, i64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: u32,
    pub exponent: i64,
}

/// An element of some backend (or of the builtin ℕ∪{0} carrier).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// Carrier element of the builtin 2-valued group on ℕ∪{0}.
    Nat(u64),
    /// Residue in `0..m` of a cyclic group.
    Residue(u64),
    /// Row index of a multiplication table.
    Index(u32),
    /// Image array of a permutation.
    Perm(Vec<u32>),
    /// Coordinates in a free abelian group.
    Vector(Vec<i64>),
    /// `(p, q, r)`, the upper unitriangular matrix with entries p, q on the
    /// superdiagonal and r in the corner.
    Heisenberg([i64; 3]),
    /// Freely reduced word.
    Word(Vec<Syllable>),
    /// Direct product components.
    Tuple(Vec<Element>),
    /// Semidirect product pair `(g, a)` with `a` an index into the
    /// automorphism group.
    Pair(Box<Element>, u32),
}

impl Element {
    pub fn int(v: i64) -> Element {
        Element::Vector(vec![v])
    }

    fn tag(&self) -> u8 {
        match self {
            Element::Nat(_) => 0,
            Element::Residue(_) => 1,
            Element::Index(_) => 2,
            Element::Perm(_) => 3,
            Element::Vector(_) => 4,
            Element::Heisenberg(_) => 5,
            Element::Word(_) => 6,
            Element::Tuple(_) => 7,
            Element::Pair(..) => 8,
        }
    }

    /// Injective, self-delimiting byte key. Byte order equals [`Ord`].
    ///
    /// Integers sort by absolute value, non-negative first, so the identity
    /// of every backend has the smallest key among its elements.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_key(&mut out);
        out
    }

    fn write_key(&self, out: &mut Vec<u8>) {
        out.push(self.tag());
        match self {
            Element::Nat(v) | Element::Residue(v) => out.extend_from_slice(&v.to_be_bytes()),
            Element::Index(v) => out.extend_from_slice(&v.to_be_bytes()),
            Element::Perm(p) => {
                out.extend_from_slice(&(p.len() as u32).to_be_bytes());
                for v in p {
                    out.extend_from_slice(&v.to_be_bytes());
                }
            }
            Element::Vector(v) => {
                out.extend_from_slice(&(v.len() as u32).to_be_bytes());
                for &x in v {
                    write_int_key(x, out);
                }
            }
            Element::Heisenberg(v) => {
                for &x in v {
                    write_int_key(x, out);
                }
            }
            Element::Word(w) => {
                out.extend_from_slice(&letter_length(w).to_be_bytes());
                out.extend_from_slice(&(w.len() as u32).to_be_bytes());
                for s in w {
                    out.extend_from_slice(&s.generator.to_be_bytes());
                    write_int_key(s.exponent, out);
                }
            }
            Element::Tuple(parts) => {
                out.extend_from_slice(&(parts.len() as u32).to_be_bytes());
                for part in parts {
                    part.write_key(out);
                }
            }
            Element::Pair(g, a) => {
                g.write_key(out);
                out.extend_from_slice(&a.to_be_bytes());
            }
        }
    }
}

fn write_int_key(x: i64, out: &mut Vec<u8>) {
    out.extend_from_slice(&x.unsigned_abs().to_be_bytes());
    out.push(u8::from(x < 0));
}

fn cmp_int(a: i64, b: i64) -> Ordering {
    a.unsigned_abs().cmp(&b.unsigned_abs()).then((a < 0).cmp(&(b < 0)))
}

fn cmp_ints(a: &[i64], b: &[i64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| cmp_int(x, y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

fn letter_length(w: &[Syllable]) -> u128 {
    w.iter().map(|s| u128::from(s.exponent.unsigned_abs())).sum()
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        use Element::*;
        match (self, other) {
            (Nat(a), Nat(b)) | (Residue(a), Residue(b)) => a.cmp(b),
            (Index(a), Index(b)) => a.cmp(b),
            (Perm(a), Perm(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Vector(a), Vector(b)) => a.len().cmp(&b.len()).then_with(|| cmp_ints(a, b)),
            (Heisenberg(a), Heisenberg(b)) => cmp_ints(a, b),
            (Word(a), Word(b)) => letter_length(a)
                .cmp(&letter_length(b))
                .then(a.len().cmp(&b.len()))
                .then_with(|| {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| x.generator.cmp(&y.generator).then(cmp_int(x.exponent, y.exponent)))
                        .find(|o| o.is_ne())
                        .unwrap_or(Ordering::Equal)
                }),
            (Tuple(a), Tuple(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Pair(g, a), Pair(h, b)) => g.cmp(h).then(a.cmp(b)),
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone)]
struct Semidirect {
    base: Backend,
    automorphisms: AutomorphismGroup,
}

#[derive(Debug, Clone)]
enum Kind {
    FiniteTable(FiniteTable),
    Permutation(PermGroup),
    Cyclic(u64),
    Free,
    FreeAbelian,
    Heisenberg,
    DirectProduct(Vec<Backend>),
    Semidirect(Box<Semidirect>),
}

/// A finitely generated group with named generators.
#[derive(Debug, Clone)]
pub struct Backend {
    kind: Kind,
    names: Vec<String>,
}

impl Backend {
    fn with_names(kind: Kind, names: Vec<String>, expected: Option<usize>) -> Result<Self> {
        if let Some(expected) = expected {
            if names.len() != expected {
                return Err(Error::InvalidBackend(format!(
                    "expected {expected} generator names, got {}",
                    names.len()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !is_generator_name(name) {
                return Err(Error::InvalidBackend(format!("invalid generator name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidBackend(format!("duplicate generator name `{name}`")));
            }
        }
        Ok(Backend { kind, names })
    }

    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::with_names(Kind::Free, names.into_iter().map(Into::into).collect(), None)
    }

    pub fn free_abelian<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::with_names(Kind::FreeAbelian, names.into_iter().map(Into::into).collect(), None)
    }

    /// ℤ with a single generator.
    pub fn integers(name: &str) -> Result<Self> {
        Self::free_abelian([name])
    }

    pub fn heisenberg(a: &str, b: &str) -> Result<Self> {
        Self::with_names(Kind::Heisenberg, vec![a.to_string(), b.to_string()], None)
    }

    pub fn cyclic(order: u64, name: &str) -> Result<Self> {
        if order == 0 || order > i64::MAX as u64 {
            return Err(Error::InvalidBackend(format!("cyclic order {order} out of range")));
        }
        Self::with_names(Kind::Cyclic(order), vec![name.to_string()], None)
    }

    pub fn finite_table<S: Into<String>>(
        table: &[Vec<u32>],
        names: impl IntoIterator<Item = S>,
        generators: &[u32],
    ) -> Result<Self> {
        let t = FiniteTable::new(table, generators)?;
        Self::with_names(Kind::FiniteTable(t), names.into_iter().map(Into::into).collect(), Some(generators.len()))
    }

    pub fn permutation<S: Into<String>>(
        degree: usize,
        names: impl IntoIterator<Item = S>,
        generators: Vec<Vec<u32>>,
        budget: Budget,
    ) -> Result<Self> {
        let count = generators.len();
        let p = PermGroup::new(degree, generators, budget)?;
        Self::with_names(Kind::Permutation(p), names.into_iter().map(Into::into).collect(), Some(count))
    }

    /// Direct product; generator names of the factors must be distinct.
    pub fn direct_product(factors: Vec<Backend>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidBackend("direct product needs a factor".into()));
        }
        let names = factors.iter().flat_map(|f| f.names.iter().cloned()).collect();
        Self::with_names(Kind::DirectProduct(factors), names, None)
    }

    /// The semidirect product `G ⋊ A` with multiplication
    /// `(g, a)(h, b) = (g · a⁻¹(h), ab)`.
    ///
    /// Here `ab` means "apply `a`, then `b`", which is what makes the formula
    /// associative under the left action. Generators are `(s, id)` for the
    /// generators `s` of `G`, followed by `(e, a)` for every non-identity `a`.
    pub fn semidirect(base: Backend, automorphisms: AutomorphismGroup) -> Result<Self> {
        automorphisms.check_backend(&base)?;
        let mut names = base.names.clone();
        for (i, a) in automorphisms.elements().iter().enumerate().skip(1) {
            let name = if is_generator_name(a.name()) && !names.iter().any(|n| n == a.name()) {
                a.name().to_string()
            } else {
                format!("alpha{i}")
            };
            names.push(name);
        }
        Self::with_names(Kind::Semidirect(Box::new(Semidirect { base, automorphisms })), names, None)
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::FiniteTable(_) => "finite_table",
            Kind::Permutation(_) => "permutation",
            Kind::Cyclic(_) => "cyclic",
            Kind::Free => "free",
            Kind::FreeAbelian => "free_abelian",
            Kind::Heisenberg => "heisenberg",
            Kind::DirectProduct(_) => "direct_product",
            Kind::Semidirect(_) => "semidirect",
        }
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            Kind::FiniteTable(_) => Element::Index(0),
            Kind::Permutation(p) => Element::Perm((0..p.degree() as u32).collect()),
            Kind::Cyclic(_) => Element::Residue(0),
            Kind::Free => Element::Word(Vec::new()),
            Kind::FreeAbelian => Element::Vector(vec![0; self.rank()]),
            Kind::Heisenberg => Element::Heisenberg([0; 3]),
            Kind::DirectProduct(fs) => Element::Tuple(fs.iter().map(Backend::identity).collect()),
            Kind::Semidirect(sd) => Element::Pair(Box::new(sd.base.identity()), 0),
        }
    }

    pub fn generator(&self, index: usize) -> Result<Element> {
        if index >= self.rank() {
            return Err(Error::UnknownGenerator(format!("#{index}")));
        }
        Ok(match &self.kind {
            Kind::FiniteTable(t) => Element::Index(t.generators()[index]),
            Kind::Permutation(p) => Element::Perm(p.generators()[index].clone()),
            Kind::Cyclic(m) => Element::Residue(1 % m),
            Kind::Free => Element::Word(vec![Syllable { generator: index as u32, exponent: 1 }]),
            Kind::FreeAbelian => {
                let mut v = vec![0; self.rank()];
                v[index] = 1;
                Element::Vector(v)
            }
            Kind::Heisenberg => Element::Heisenberg(if index == 0 { [1, 0, 0] } else { [0, 1, 0] }),
            Kind::DirectProduct(fs) => {
                let mut offset = 0;
                let mut parts = Vec::with_capacity(fs.len());
                for f in fs {
                    if (offset..offset + f.rank()).contains(&index) {
                        parts.push(f.generator(index - offset)?);
                    } else {
                        parts.push(f.identity());
                    }
                    offset += f.rank();
                }
                Element::Tuple(parts)
            }
            Kind::Semidirect(sd) => {
                let k = sd.base.rank();
                if index < k {
                    Element::Pair(Box::new(sd.base.generator(index)?), 0)
                } else {
                    Element::Pair(Box::new(sd.base.identity()), (index - k + 1) as u32)
                }
            }
        })
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank()).filter_map(|i| self.generator(i).ok()).collect()
    }

    /// Whether `g` is a valid normal-form element of this backend.
    pub fn contains(&self, g: &Element) -> bool {
        match (&self.kind, g) {
            (Kind::FiniteTable(t), Element::Index(i)) => (*i as usize) < t.order(),
            (Kind::Permutation(p), Element::Perm(x)) => p.is_member(x),
            (Kind::Cyclic(m), Element::Residue(k)) => k < m,
            (Kind::Free, Element::Word(w)) => free::is_reduced(w, self.rank()),
            (Kind::FreeAbelian, Element::Vector(v)) => v.len() == self.rank(),
            (Kind::Heisenberg, Element::Heisenberg(_)) => true,
            (Kind::DirectProduct(fs), Element::Tuple(parts)) => {
                fs.len() == parts.len() && fs.iter().zip(parts).all(|(f, p)| f.contains(p))
            }
            (Kind::Semidirect(sd), Element::Pair(g, a)) => {
                (*a as usize) < sd.automorphisms.order() && sd.base.contains(g)
            }
            _ => false,
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        use Element as E;
        Ok(match (&self.kind, a, b) {
            (Kind::FiniteTable(t), E::Index(x), E::Index(y)) => E::Index(t.mul(*x, *y).ok_or(Error::BackendMismatch)?),
            (Kind::Permutation(p), E::Perm(x), E::Perm(y)) => {
                if x.len() != p.degree() || y.len() != p.degree() {
                    return Err(Error::BackendMismatch);
                }
                E::Perm(finite::compose(x, y))
            }
            (Kind::Cyclic(m), E::Residue(x), E::Residue(y)) => {
                if x >= m || y >= m {
                    return Err(Error::BackendMismatch);
                }
                E::Residue(((u128::from(*x) + u128::from(*y)) % u128::from(*m)) as u64)
            }
            (Kind::Free, E::Word(x), E::Word(y)) => E::Word(free::mul(x, y)?),
            (Kind::FreeAbelian, E::Vector(x), E::Vector(y)) => {
                if x.len() != self.rank() || y.len() != self.rank() {
                    return Err(Error::BackendMismatch);
                }
                E::Vector(
                    x.iter()
                        .zip(y)
                        .map(|(u, v)| u.checked_add(*v).ok_or(Error::Overflow))
                        .collect::<Result<_>>()?,
                )
            }
            (Kind::Heisenberg, E::Heisenberg([p, q, r]), E::Heisenberg([p2, q2, r2])) => {
                let corner = p.checked_mul(*q2).and_then(|pq| r.checked_add(*r2)?.checked_add(pq));
                E::Heisenberg([
                    p.checked_add(*p2).ok_or(Error::Overflow)?,
                    q.checked_add(*q2).ok_or(Error::Overflow)?,
                    corner.ok_or(Error::Overflow)?,
                ])
            }
            (Kind::DirectProduct(fs), E::Tuple(x), E::Tuple(y)) => {
                if x.len() != fs.len() || y.len() != fs.len() {
                    return Err(Error::BackendMismatch);
                }
                E::Tuple(fs.iter().zip(x.iter().zip(y)).map(|(f, (u, v))| f.mul(u, v)).collect::<Result<_>>()?)
            }
            (Kind::Semidirect(sd), E::Pair(g, a), E::Pair(h, b)) => {
                let auts = &sd.automorphisms;
                let (a, b) = (*a as usize, *b as usize);
                if a >= auts.order() || b >= auts.order() {
                    return Err(Error::BackendMismatch);
                }
                let moved = auts.apply_index(&sd.base, auts.inverse_index(a), h)?;
                E::Pair(Box::new(sd.base.mul(g, &moved)?), auts.then_index(a, b) as u32)
            }
            _ => return Err(Error::BackendMismatch),
        })
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        use Element as E;
        Ok(match (&self.kind, a) {
            (Kind::FiniteTable(t), E::Index(x)) => E::Index(t.inv(*x).ok_or(Error::BackendMismatch)?),
            (Kind::Permutation(p), E::Perm(x)) if x.len() == p.degree() => E::Perm(finite::invert(x)),
            (Kind::Cyclic(m), E::Residue(x)) if x < m => E::Residue((m - x) % m),
            (Kind::Free, E::Word(x)) => E::Word(free::inv(x)?),
            (Kind::FreeAbelian, E::Vector(x)) if x.len() == self.rank() => {
                E::Vector(x.iter().map(|v| v.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?)
            }
            (Kind::Heisenberg, E::Heisenberg([p, q, r])) => {
                // (p,q,r)^-1 = (-p, -q, pq - r)
                let corner = p.checked_mul(*q).and_then(|pq| pq.checked_sub(*r)).ok_or(Error::Overflow)?;
                E::Heisenberg([
                    p.checked_neg().ok_or(Error::Overflow)?,
                    q.checked_neg().ok_or(Error::Overflow)?,
                    corner,
                ])
            }
            (Kind::DirectProduct(fs), E::Tuple(x)) if x.len() == fs.len() => {
                E::Tuple(fs.iter().zip(x).map(|(f, u)| f.inv(u)).collect::<Result<_>>()?)
            }
            (Kind::Semidirect(sd), E::Pair(g, a)) => {
                let auts = &sd.automorphisms;
                let a = *a as usize;
                if a >= auts.order() {
                    return Err(Error::BackendMismatch);
                }
                let moved = auts.apply_index(&sd.base, a, &sd.base.inv(g)?)?;
                E::Pair(Box::new(moved), auts.inverse_index(a) as u32)
            }
            _ => return Err(Error::BackendMismatch),
        })
    }

    pub fn pow(&self, a: &Element, exponent: i64) -> Result<Element> {
        let mut base = if exponent < 0 { self.inv(a)? } else { a.clone() };
        let mut k = exponent.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates letters with `images[i]` substituted for generator `i`.
    pub fn eval_letters(&self, letters: &[(usize, i64)], images: &[Element]) -> Result<Element> {
        let mut acc = self.identity();
        for &(gen, exp) in letters {
            let image = images.get(gen).ok_or(Error::BackendMismatch)?;
            acc = self.mul(&acc, &self.pow(image, exp)?)?;
        }
        Ok(acc)
    }

    /// Resolves generator names and evaluates the word.
    pub fn eval_word(&self, word: &Word) -> Result<Element> {
        let letters = self.letters_of(word)?;
        self.eval_letters(&letters, &self.generators())
    }

    pub fn letters_of(&self, word: &Word) -> Result<Letters> {
        word.letters().iter().map(|(name, exp)| Ok((self.generator_index(name)?, *exp))).collect()
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            Kind::FiniteTable(_) | Kind::Permutation(_) | Kind::Cyclic(_) => true,
            Kind::Free | Kind::FreeAbelian => self.rank() == 0,
            Kind::Heisenberg => false,
            Kind::DirectProduct(fs) => fs.iter().all(Backend::is_finite),
            Kind::Semidirect(sd) => sd.base.is_finite(),
        }
    }

    /// All elements, sorted. Finite backends only.
    pub fn elements(&self, budget: Budget) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(Error::InfiniteBackendUnsupported);
        }
        let gens = self.generators();
        let mut seen = BTreeSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = self.mul(&x, s)?;
                if !seen.contains(&y) {
                    budget.check(seen.len() + 1)?;
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Defining relators over generator indices; together with the
    /// generators they present the group.
    pub fn relators(&self) -> Result<Vec<Letters>> {
        Ok(match &self.kind {
            Kind::FiniteTable(t) => t.relators(),
            Kind::Permutation(p) => p.relators(),
            Kind::Cyclic(m) => vec![vec![(0, *m as i64)]],
            Kind::Free => Vec::new(),
            Kind::FreeAbelian => {
                let n = self.rank();
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(commutator(&[(i, 1)], &[(j, 1)]));
                    }
                }
                out
            }
            Kind::Heisenberg => {
                let c = commutator(&[(0, 1)], &[(1, 1)]);
                vec![commutator(&[(0, 1)], &c), commutator(&[(1, 1)], &c)]
            }
            Kind::DirectProduct(fs) => {
                let mut out = Vec::new();
                let mut offset = 0;
                let mut ranges = Vec::new();
                for f in fs {
                    for rel in f.relators()? {
                        out.push(rel.into_iter().map(|(g, e)| (g + offset, e)).collect());
                    }
                    ranges.push(offset..offset + f.rank());
                    offset += f.rank();
                }
                for (i, ri) in ranges.iter().enumerate() {
                    for rj in &ranges[i + 1..] {
                        for a in ri.clone() {
                            for b in rj.clone() {
                                out.push(commutator(&[(a, 1)], &[(b, 1)]));
                            }
                        }
                    }
                }
                out
            }
            Kind::Semidirect(_) => {
                return Err(Error::Unsupported("relators of a semidirect product".into()));
            }
        })
    }

    /// Image of `g` under the homomorphism into `target` that sends
    /// generator `i` to `images[i]`, computed from `g`'s normal form.
    pub fn hom_image(&self, g: &Element, images: &[Element], target: &Backend) -> Result<Element> {
        if images.len() != self.rank() {
            return Err(Error::BackendMismatch);
        }
        match (&self.kind, g) {
            (Kind::FiniteTable(t), Element::Index(i)) => {
                target.eval_letters(t.word(*i).ok_or(Error::BackendMismatch)?, images)
            }
            (Kind::Permutation(p), Element::Perm(x)) => {
                target.eval_letters(p.word(x).ok_or(Error::BackendMismatch)?, images)
            }
            (Kind::Cyclic(m), Element::Residue(k)) if k < m => target.pow(&images[0], *k as i64),
            (Kind::Free, Element::Word(w)) => {
                let letters: Letters = w.iter().map(|s| (s.generator as usize, s.exponent)).collect();
                target.eval_letters(&letters, images)
            }
            (Kind::FreeAbelian, Element::Vector(v)) if v.len() == self.rank() => {
                let letters: Letters = v.iter().copied().enumerate().filter(|(_, e)| *e != 0).collect();
                target.eval_letters(&letters, images)
            }
            (Kind::Heisenberg, Element::Heisenberg([p, q, r])) => {
                // (p, q, r) = a^p b^q [a,b]^(r - pq)
                let k = p.checked_mul(*q).and_then(|pq| r.checked_sub(pq)).ok_or(Error::Overflow)?;
                let (a, b) = (&images[0], &images[1]);
                let c = target.eval_letters(&commutator(&[(0, 1)], &[(1, 1)]), images)?;
                let head = target.mul(&target.pow(a, *p)?, &target.pow(b, *q)?)?;
                target.mul(&head, &target.pow(&c, k)?)
            }
            (Kind::DirectProduct(fs), Element::Tuple(parts)) if parts.len() == fs.len() => {
                let mut acc = target.identity();
                let mut offset = 0;
                for (f, part) in fs.iter().zip(parts) {
                    let image = f.hom_image(part, &images[offset..offset + f.rank()], target)?;
                    acc = target.mul(&acc, &image)?;
                    offset += f.rank();
                }
                Ok(acc)
            }
            (Kind::Semidirect(_), _) => Err(Error::Unsupported("homomorphisms out of a semidirect product".into())),
            _ => Err(Error::BackendMismatch),
        }
    }

    /// `a(g)`.
    pub fn apply(&self, a: &Automorphism, g: &Element) -> Result<Element> {
        if a.images().len() != self.rank() {
            return Err(Error::UnverifiedAutomorphism);
        }
        self.hom_image(g, a.images(), self)
    }

    /// Human-readable form of an element, using generator names.
    pub fn render(&self, g: &Element) -> String {
        let mut out = String::new();
        self.render_into(g, &mut out);
        out
    }

    fn render_into(&self, g: &Element, out: &mut String) {
        let word = |letters: &[(usize, i64)], out: &mut String| {
            let w = Word::from_letters(letters.iter().map(|&(i, e)| (self.names[i].clone(), e)));
            let _ = write!(out, "{w}");
        };
        match (&self.kind, g) {
            (Kind::FiniteTable(t), Element::Index(i)) => match t.word(*i) {
                Some(letters) => word(&compress(letters), out),
                None => {
                    let _ = write!(out, "#{i}");
                }
            },
            (Kind::Permutation(_), Element::Perm(p)) => out.push_str(&cycles(p)),
            (Kind::Cyclic(_), Element::Residue(k)) => {
                let letters: Letters = if *k == 0 { vec![] } else { vec![(0, *k as i64)] };
                word(&letters, out)
            }
            (Kind::Free, Element::Word(w)) => {
                word(&w.iter().map(|s| (s.generator as usize, s.exponent)).collect::<Letters>(), out)
            }
            (Kind::FreeAbelian, Element::Vector(v)) => {
                word(&v.iter().copied().enumerate().filter(|(_, e)| *e != 0).collect::<Letters>(), out)
            }
            (Kind::Heisenberg, Element::Heisenberg([p, q, r])) => {
                let _ = write!(out, "({p},{q},{r})");
            }
            (Kind::DirectProduct(fs), Element::Tuple(parts)) if parts.len() == fs.len() => {
                out.push('(');
                for (i, (f, part)) in fs.iter().zip(parts).enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    f.render_into(part, out);
                }
                out.push(')');
            }
            (Kind::Semidirect(sd), Element::Pair(h, a)) => {
                out.push('(');
                sd.base.render_into(h, out);
                let name = sd.automorphisms.elements().get(*a as usize).map_or("?", |x| x.name());
                let _ = write!(out, ", {name})");
            }
            (_, Element::Nat(n)) => {
                let _ = write!(out, "{n}");
            }
            _ => {
                let _ = write!(out, "{g:?}");
            }
        }
    }
}

/// `x y x⁻¹ y⁻¹`
fn commutator(x: &[(usize, i64)], y: &[(usize, i64)]) -> Letters {
    let inverse = |w: &[(usize, i64)]| w.iter().rev().map(|&(g, e)| (g, -e)).collect::<Letters>();
    let mut out = x.to_vec();
    out.extend_from_slice(y);
    out.extend(inverse(x));
    out.extend(inverse(y));
    out
}

fn compress(letters: &[(usize, i64)]) -> Letters {
    let mut out: Letters = Vec::new();
    for &(g, e) in letters {
        match out.last_mut() {
            Some((h, f)) if *h == g => *f += e,
            _ => out.push((g, e)),
        }
    }
    out.retain(|(_, e)| *e != 0);
    out
}

fn cycles(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{i}");
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}
