//! Cyclic codes and their partition into multiplier-equivalence classes.
//!
//! A cyclic code of length `n = n' p^t` over GF(q) is described by how many
//! times each cyclotomic coset of `q` modulo `n'` occurs among the zeros of
//! its generator: a [`CosetMultiset`] with multiplicities in `0..=p^t`.
//! Multiplying every exponent by a unit `a` of `Z/n'` permutes the cosets
//! and corresponds to the coordinate permutation `i -> a^-1 i`, so two
//! multisets in the same orbit describe equivalent codes. The class
//! enumeration keeps the lexicographically smallest multiplicity vector of
//! every orbit.

use alloc::vec;
use alloc::vec::Vec;

use crate::galois::{minimal_poly, primitive_root_of_unity, Field, Poly};
use crate::linalg::GenMatrix;
use crate::num::{self, split_prime_power};
use crate::{Error, Result};

/// Orbits of `{0, .., n'-1}` under multiplication by `q`, each sorted, the
/// list ordered by smallest element.
pub fn cyclotomic_cosets(q: usize, n_prime: usize) -> Result<Vec<Vec<usize>>> {
    if n_prime == 0 || num::gcd(q as u64, n_prime as u64) != 1 {
        return Err(Error::InvalidInput("q and n' must be coprime"));
    }
    let mut seen = vec![false; n_prime];
    let mut out = Vec::new();
    for start in 0..n_prime {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::new();
        let mut w = start;
        while !seen[w] {
            seen[w] = true;
            coset.push(w);
            w = w * q % n_prime;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    Ok(out)
}

/// Multiplicity of every cyclotomic coset among the zeros of a generator,
/// indexed like [`CosetPartition::cosets`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetMultiset {
    mults: Vec<u32>,
}

impl CosetMultiset {
    pub fn multiplicities(&self) -> &[u32] {
        &self.mults
    }

    pub fn is_empty(&self) -> bool {
        self.mults.iter().all(|&m| m == 0)
    }
}

/// The coset structure of length-`n` cyclic codes over one field.
#[derive(Clone, Debug)]
pub struct CosetPartition {
    field: Field,
    n: usize,
    n_prime: usize,
    t: u32,
    max_mult: u32,
    cosets: Vec<Vec<usize>>,
    owner: Vec<usize>,
    // distinct coset permutations induced by the units of Z/n'
    perms: Vec<Vec<usize>>,
}

impl CosetPartition {
    pub fn new(field: Field, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("length must be positive"));
        }
        let (n_prime, t, pt) = split_prime_power(n, field.characteristic() as usize);
        let cosets = cyclotomic_cosets(field.order() as usize, n_prime)?;
        let mut owner = vec![0; n_prime];
        for (i, c) in cosets.iter().enumerate() {
            for &w in c {
                owner[w] = i;
            }
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for a in num::units(n_prime) {
            let perm: Vec<usize> = cosets.iter().map(|c| owner[a * c[0] % n_prime]).collect();
            if !perms.contains(&perm) {
                perms.push(perm);
            }
        }
        Ok(CosetPartition { field, n, n_prime, t, max_mult: pt as u32, cosets, owner, perms })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    /// Exponent `t` in `n = n' p^t`.
    pub fn t(&self) -> u32 {
        self.t
    }

    /// `p^t`, the largest multiplicity a coset can carry.
    pub fn max_multiplicity(&self) -> u32 {
        self.max_mult
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    /// Validates a multiplicity vector. The full product (every coset at
    /// maximal multiplicity) generates the zero code and is rejected.
    pub fn multiset(&self, mults: Vec<u32>) -> Result<CosetMultiset> {
        if mults.len() != self.cosets.len() {
            return Err(Error::ShapeMismatch("one multiplicity per coset"));
        }
        if mults.iter().any(|&m| m > self.max_mult) {
            return Err(Error::InvalidInput("multiplicity exceeds p^t"));
        }
        let ms = CosetMultiset { mults };
        if self.degree(&ms) >= self.n {
            return Err(Error::InvalidInput("the full product generates the zero code"));
        }
        Ok(ms)
    }

    /// Degree of the generator described by `ms`.
    pub fn degree(&self, ms: &CosetMultiset) -> usize {
        ms.mults.iter().zip(&self.cosets).map(|(&m, c)| m as usize * c.len()).sum()
    }

    /// Maps every exponent `w` to `a w mod n'` and re-indexes the cosets.
    pub fn multiplier_image(&self, ms: &CosetMultiset, a: usize) -> Result<CosetMultiset> {
        if num::gcd(a as u64, self.n_prime as u64) != 1 {
            return Err(Error::InvalidInput("multiplier must be a unit modulo n'"));
        }
        Ok(self.apply(ms, |c| self.owner[a * self.cosets[c][0] % self.n_prime]))
    }

    fn apply(&self, ms: &CosetMultiset, dest: impl Fn(usize) -> usize) -> CosetMultiset {
        let mut mults = vec![0; ms.mults.len()];
        for (c, &m) in ms.mults.iter().enumerate() {
            mults[dest(c)] = m;
        }
        CosetMultiset { mults }
    }

    /// Smallest multiplicity vector in the multiplier orbit of `ms`.
    pub fn canonical(&self, ms: &CosetMultiset) -> CosetMultiset {
        self.perms.iter().map(|perm| self.apply(ms, |c| perm[c])).min().expect("the identity is always a multiplier")
    }

    /// Coordinate permutation of length `n` carrying the code of `ms` onto the
    /// code of `multiplier_image(ms, a)`; entry `i` is the new position of
    /// coordinate `i`.
    ///
    /// The multiplier acts on `Z/n'`; it is lifted to a unit `b` of `Z/n`
    /// congruent to `a^-1` modulo `n'` and the permutation is `i -> b i`.
    pub fn coordinate_permutation(&self, a: usize) -> Result<Vec<usize>> {
        let n_prime = self.n_prime;
        if num::gcd(a as u64, n_prime as u64) != 1 {
            return Err(Error::InvalidInput("multiplier must be a unit modulo n'"));
        }
        let inv = (0..n_prime.max(1)).find(|&x| (a * x) % n_prime == 1 % n_prime).unwrap_or(1);
        let lift = (0..self.max_mult as usize)
            .map(|j| inv + j * n_prime)
            .find(|&b| num::gcd(b as u64, self.n as u64) == 1)
            .ok_or(Error::InvalidInput("no unit lift of the multiplier"))?;
        Ok((0..self.n).map(|i| lift * i % self.n).collect())
    }
}

/// One representative per equivalence class of cyclic codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    pub multiset: CosetMultiset,
    /// Monic standard generator.
    pub generator: Poly,
    /// Check polynomial, `generator * check = x^n - 1`.
    pub check: Poly,
    pub dim: usize,
}

impl CyclicClass {
    /// The class of the whole space, generated by 1.
    pub fn is_full_space(&self) -> bool {
        self.generator.is_one()
    }

    pub fn code(&self) -> CyclicCode {
        CyclicCode {
            length: self.generator.degree().unwrap() + self.dim,
            generator: self.generator.clone(),
            check: self.check.clone(),
            dim: self.dim,
        }
    }
}

/// Inclusive dimension window applied before any class is materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimFilter {
    pub k_min: usize,
    pub k_max: usize,
}

/// Partition of the cyclic codes of length `n` into multiplier classes.
///
/// Every multiset except the full product is generated, reduced to its
/// canonical orbit representative, and turned into a generator through the
/// minimal polynomials of a primitive `n'`-th root of unity. The whole space
/// (empty multiset) is included; the zero code is not. Classes are ordered by
/// multiplicity vector.
pub fn enumerate_class_reps(field: Field, n: usize, filter: Option<DimFilter>) -> Result<Vec<CyclicClass>> {
    let partition = CosetPartition::new(field, n)?;
    let root = primitive_root_of_unity(field, partition.n_prime)?;
    let minpolys = partition.cosets.iter().map(|c| minimal_poly(c, &root)).collect::<Result<Vec<_>>>()?;

    let (deg_lo, deg_hi) = match filter {
        Some(f) => (n.saturating_sub(f.k_max), n.saturating_sub(f.k_min).min(n - 1)),
        None => (0, n - 1),
    };
    if filter.is_some_and(|f| f.k_min > f.k_max) || deg_lo > deg_hi {
        return Ok(Vec::new());
    }

    let sizes: Vec<usize> = partition.cosets.iter().map(Vec::len).collect();
    // suffix sums bound how much degree the remaining cosets can still add
    let mut room = vec![0usize; sizes.len() + 1];
    for i in (0..sizes.len()).rev() {
        room[i] = room[i + 1] + sizes[i] * partition.max_mult as usize;
    }

    let mut out = Vec::new();
    let mut mults = vec![0u32; sizes.len()];
    walk_multisets(&partition, &sizes, &room, 0, 0, (deg_lo, deg_hi), &mut mults, &mut |mults| {
        let ms = CosetMultiset { mults: mults.to_vec() };
        if partition.canonical(&ms) != ms {
            return;
        }
        let generator = ms.mults.iter().zip(&minpolys).fold(Poly::one(field), |acc, (&m, p)| &acc * &p.pow(m as u64));
        let check = Poly::xn_minus_one(field, n).exact_div(&generator).expect("generator divides x^n - 1");
        let dim = n - generator.degree().unwrap();
        out.push(CyclicClass { multiset: ms, generator, check, dim });
    });
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk_multisets(
    partition: &CosetPartition,
    sizes: &[usize],
    room: &[usize],
    idx: usize,
    degree: usize,
    bounds: (usize, usize),
    mults: &mut [u32],
    visit: &mut impl FnMut(&[u32]),
) {
    if idx == sizes.len() {
        if degree >= bounds.0 && degree <= bounds.1 {
            visit(mults);
        }
        return;
    }
    if degree + room[idx] < bounds.0 {
        return;
    }
    for m in 0..=partition.max_mult {
        let d = degree + m as usize * sizes[idx];
        if d > bounds.1 {
            break;
        }
        mults[idx] = m;
        walk_multisets(partition, sizes, room, idx + 1, d, bounds, mults, visit);
    }
    mults[idx] = 0;
}

/// A cyclic code `<g>` of length `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    length: usize,
    generator: Poly,
    check: Poly,
    dim: usize,
}

/// Cyclic code generated by a divisor `g` of `x^m - 1`.
pub fn cyclic_code_from_gen(g: &Poly, m: usize) -> Result<CyclicCode> {
    if m == 0 {
        return Err(Error::InvalidInput("length must be positive"));
    }
    let xm1 = Poly::xn_minus_one(g.field(), m);
    if g.is_zero() || !g.divides(&xm1) {
        return Err(Error::NotADivisor { length: m });
    }
    let generator = g.monic();
    let check = xm1.exact_div(&generator)?;
    let dim = m - generator.degree().unwrap();
    Ok(CyclicCode { length: m, generator, check, dim })
}

impl CyclicCode {
    pub fn field(&self) -> Field {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn check(&self) -> &Poly {
        &self.check
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `k x m` circulant matrix whose row `i` is `x^i g(x)`.
    pub fn generator_matrix(&self) -> GenMatrix {
        let rows: Vec<Vec<u8>> = (0..self.dim).map(|i| self.generator.shift(i).to_vector(self.length)).collect();
        GenMatrix::from_rows(self.field(), self.length, rows)
    }

    /// Membership through the check polynomial: `v(x) h(x) = 0 mod x^m - 1`.
    pub fn is_codeword(&self, v: &[u8]) -> Result<bool> {
        if v.len() != self.length {
            return Err(Error::ShapeMismatch("word length differs from code length"));
        }
        let word = Poly::try_from_coeffs(self.field(), v.to_vec())?;
        Ok(word.mul_mod(&self.check, self.length)?.is_zero())
    }
}

/// Lower bound on the minimum distance of `code` from its zeros.
///
/// For a simple-root code, `b, b + a, .., b + (r - 1) a` consecutive zeros
/// with `a` a unit of `Z/n'` give `d >= r + 1`. For `n = n' p^t` the code
/// splits into the simple-root codes `C_s` generated by the cosets of
/// multiplicity above `s`, and `d = min_s P(s) d(C_s)` where `P(s)` is the
/// product of the base-`p` digits of `s` plus one; every `d(C_s)` is
/// replaced by its run bound. The zero code gives 0.
pub fn bch_bound(code: &CyclicCode) -> Result<usize> {
    let field = code.field();
    let partition = CosetPartition::new(field, code.length())?;
    let root = primitive_root_of_unity(field, partition.n_prime)?;
    let mut mults = Vec::with_capacity(partition.cosets.len());
    for coset in &partition.cosets {
        let p = minimal_poly(coset, &root)?;
        let mut rest = code.generator().clone();
        let mut e = 0;
        while e < partition.max_mult && p.divides(&rest) {
            rest = rest.exact_div(&p)?;
            e += 1;
        }
        mults.push(e);
    }
    let n_prime = partition.n_prime;
    let p = field.characteristic() as usize;
    let units = num::units(n_prime);
    let mut best: Option<usize> = None;
    for s in 0..partition.max_mult {
        let zero: Vec<bool> = (0..n_prime).map(|w| mults[partition.owner[w]] > s).collect();
        if zero.iter().all(|&z| z) {
            continue;
        }
        let run = units.iter().map(|&a| longest_run(&zero, a)).max().unwrap_or(0);
        let mut digits = 1;
        let mut rest = s as usize;
        while rest > 0 {
            digits *= rest % p + 1;
            rest /= p;
        }
        let bound = digits * (run + 1);
        best = Some(best.map_or(bound, |b| b.min(bound)));
    }
    Ok(best.unwrap_or(0))
}

// longest cyclic run of zeros along 0, a, 2a, ..; not every entry is a zero
fn longest_run(zero: &[bool], a: usize) -> usize {
    let n = zero.len();
    let at = |j: usize| zero[j * a % n];
    let Some(start) = (0..n).find(|&j| !at(j)) else { return n };
    let (mut best, mut cur) = (0, 0);
    for j in 1..=n {
        if at((start + j) % n) {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}
