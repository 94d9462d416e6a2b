//! Root systems behind the diagram combinatorics.
//!
//! Type A roots ε_i − ε_j index horizontal strands; sets of mutually
//! orthogonal positive roots (admissible sets) are exactly the possible tops
//! of diagrams. The projection `fp(x) = (x + σ(x))/2` folds the type A_{2N−1}
//! system on 2n dots onto a type C_n system Ψ, and admissible C sets are the
//! fp-images of mirror-symmetric admissible A sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Monomial, TokenA};
use crate::{Error, Result};

/// A positive type A root ε_i − ε_j with i < j, i.e. a potential horizontal
/// strand joining columns i and j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootA {
    i: usize,
    j: usize,
}

impl RootA {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j {
            return Err(Error::InvalidDiagram(format!("bad root indices ({i},{j})")));
        }
        Ok(Self { i, j })
    }

    /// Normalize an unordered index pair to a positive root.
    fn from_unordered(a: usize, b: usize) -> Self {
        if a < b {
            Self { i: a, j: b }
        } else {
            Self { i: b, j: a }
        }
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// The simple root α_i = ε_i − ε_{i+1}.
    pub fn simple(i: usize) -> Self {
        Self { i, j: i + 1 }
    }

    pub fn touches(&self, dot: usize) -> bool {
        self.i == dot || self.j == dot
    }

    pub fn is_orthogonal(&self, other: &RootA) -> bool {
        !self.touches(other.i) && !self.touches(other.j)
    }

    /// Apply the transposition of dots a and b (the reflection by ε_a − ε_b),
    /// re-normalizing the sign.
    pub fn transposed(&self, a: usize, b: usize) -> RootA {
        let map = |d: usize| {
            if d == a {
                b
            } else if d == b {
                a
            } else {
                d
            }
        };
        RootA::from_unordered(map(self.i), map(self.j))
    }

    /// Mirror image about the central axis of 2n dots.
    pub fn mirrored(&self, n2: usize) -> RootA {
        RootA::from_unordered(n2 + 1 - self.i, n2 + 1 - self.j)
    }

    /// Coefficients over the simple roots α_1..α_{m−1} of A_{m−1}.
    pub fn alpha_coeffs(&self, m: usize) -> Vec<i64> {
        (1..m).map(|k| (self.i <= k && k < self.j) as i64).collect()
    }
}

impl fmt::Display for RootA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i, self.j)
    }
}

impl Serialize for RootA {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.i, self.j).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RootA {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (i, j) = <(usize, usize)>::deserialize(deserializer)?;
        RootA::new(i, j).map_err(serde::de::Error::custom)
    }
}

/// A set of mutually orthogonal positive type A roots, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct AdmissibleSetA {
    roots: Vec<RootA>,
}

impl AdmissibleSetA {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut roots: Vec<RootA>) -> Result<Self> {
        roots.sort();
        roots.dedup();
        for (k, a) in roots.iter().enumerate() {
            for b in &roots[k + 1..] {
                if !a.is_orthogonal(b) {
                    return Err(Error::NotOrthogonal);
                }
            }
        }
        Ok(Self { roots })
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(i, j)| RootA::new(i, j))
                .collect::<Result<_>>()?,
        )
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootA] {
        &self.roots
    }

    pub fn contains(&self, r: &RootA) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.roots.iter().map(|r| r.indices()).collect()
    }

    /// Dots used by some root of the set.
    fn used_dots(&self) -> BTreeSet<usize> {
        self.roots
            .iter()
            .flat_map(|r| [r.i, r.j])
            .collect()
    }

    pub fn mirrored(&self, n2: usize) -> AdmissibleSetA {
        AdmissibleSetA::new(self.roots.iter().map(|r| r.mirrored(n2)).collect())
            .expect("mirror preserves orthogonality")
    }

    pub fn is_sigma_invariant(&self, n2: usize) -> bool {
        *self == self.mirrored(n2)
    }
}

impl<'de> Deserialize<'de> for AdmissibleSetA {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let roots = Vec::<RootA>::deserialize(deserializer)?;
        AdmissibleSetA::new(roots).map_err(serde::de::Error::custom)
    }
}

/// The top horizontal strands of a diagram as an admissible set.
pub fn top_set(a: &Monomial) -> AdmissibleSetA {
    AdmissibleSetA::from_pairs(&a.diagram.top_strands()).expect("diagram strands are disjoint")
}

/// The bottom horizontal strands of a diagram as an admissible set.
pub fn bottom_set(a: &Monomial) -> AdmissibleSetA {
    AdmissibleSetA::from_pairs(&a.diagram.bottom_strands()).expect("diagram strands are disjoint")
}

/// One step of the monoid action of a generator token on an admissible set.
/// δ^{±1} acts trivially. For E_i the three cases are: α_i already present;
/// α_i orthogonal to the whole set (adjoin it); otherwise reflect by a root of
/// the set meeting α_i after applying R_i.
pub fn act_token(tok: &TokenA, b: &AdmissibleSetA) -> AdmissibleSetA {
    match tok {
        TokenA::Delta | TokenA::DeltaInv => b.clone(),
        TokenA::R(i) => AdmissibleSetA::new(
            b.roots.iter().map(|r| r.transposed(*i, i + 1)).collect(),
        )
        .expect("reflection preserves orthogonality"),
        TokenA::E(i) => {
            let alpha = RootA::simple(*i);
            if b.contains(&alpha) {
                return b.clone();
            }
            let beta = b
                .roots
                .iter()
                .find(|r| !r.is_orthogonal(&alpha))
                .copied();
            match beta {
                None => {
                    let mut roots = b.roots.clone();
                    roots.push(alpha);
                    AdmissibleSetA::new(roots).expect("alpha orthogonal to the set")
                }
                Some(beta) => {
                    let after_r = act_token(&TokenA::R(*i), b);
                    let (a, c) = beta.indices();
                    AdmissibleSetA::new(
                        after_r.roots.iter().map(|r| r.transposed(a, c)).collect(),
                    )
                    .expect("reflection preserves orthogonality")
                }
            }
        }
    }
}

/// Left action of a word, applied right to left (innermost letter first).
pub fn act_word(word: &[TokenA], b: &AdmissibleSetA) -> AdmissibleSetA {
    word.iter().rev().fold(b.clone(), |acc, tok| act_token(tok, &acc))
}

/// Left action of an arbitrary monomial by completion: complete B to a
/// diagram with top B, multiply, and read off the new top. Independent of the
/// chosen completion.
pub fn act_monomial(a: &Monomial, b: &AdmissibleSetA) -> Result<AdmissibleSetA> {
    let n = a.n_strands();
    let completion = canonical_diagram(n, b, &adjacent_set(b.len()))?;
    let (prod, _) = a.diagram.concatenate(&completion)?;
    Ok(AdmissibleSetA::from_pairs(&prod.top_strands()).expect("diagram strands are disjoint"))
}

/// The height-zero set of k leftmost adjacent pairs {(1,2),(3,4),...}.
pub fn adjacent_set(k: usize) -> AdmissibleSetA {
    AdmissibleSetA::from_pairs(&(0..k).map(|t| (2 * t + 1, 2 * t + 2)).collect::<Vec<_>>())
        .expect("adjacent pairs are disjoint")
}

/// The unique minimal-height diagram with top B and bottom C: free dots of
/// both rows are joined vertically in left-to-right order.
pub fn canonical_diagram(n: usize, b: &AdmissibleSetA, c: &AdmissibleSetA) -> Result<Diagram> {
    if b.len() != c.len() {
        return Err(Error::SizeMismatch(format!(
            "top has {} strands, bottom has {}",
            b.len(),
            c.len()
        )));
    }
    let used_top = b.used_dots();
    let used_bot = c.used_dots();
    if used_top.last().is_some_and(|&d| d > n) || used_bot.last().is_some_and(|&d| d > n) {
        return Err(Error::IndexOutOfRange {
            index: used_top.last().copied().max(used_bot.last().copied()).unwrap(),
            context: format!("admissible set on {n} strands"),
        });
    }
    let mut pairs = b.pairs();
    for (i, j) in c.pairs() {
        pairs.push((n + i, n + j));
    }
    let free_top = (1..=n).filter(|d| !used_top.contains(d));
    let free_bot = (1..=n).filter(|d| !used_bot.contains(d));
    for (t, u) in free_top.zip(free_bot) {
        pairs.push((t, n + u));
    }
    Diagram::from_pairs(n, &pairs)
}

/// Minimal crossings needed by any diagram whose top is B.
pub fn height_set(n: usize, b: &AdmissibleSetA) -> Result<usize> {
    Ok(canonical_diagram(n, b, &adjacent_set(b.len()))?.height())
}

/// The quasi-idempotent E_B: the product of the strand diagrams E_β over
/// β ∈ B, with top and bottom both equal to B and free dots vertical.
pub fn e_product(n: usize, b: &AdmissibleSetA) -> Result<Monomial> {
    Ok(Monomial::from_diagram(canonical_diagram(n, b, b)?))
}

/// The idempotent Ê_B = δ^{−|B|} E_B.
pub fn e_hat(n: usize, b: &AdmissibleSetA) -> Result<Monomial> {
    Ok(Monomial::new(-(b.len() as i64), canonical_diagram(n, b, b)?))
}

/// Norm of a type C root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Short,
    Long,
}

/// A root of the folded type C_n system Ψ, stored as integer coefficients
/// over the simple roots β_0 (long), β_1, ..., β_{n−1} (short).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootC {
    pub coeffs: Vec<i64>,
    pub norm: Norm,
}

impl RootC {
    /// The simple root β_j of C_n.
    pub fn simple(n: usize, j: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[j] = 1;
        let norm = if j == 0 { Norm::Long } else { Norm::Short };
        Self { coeffs, norm }
    }

    /// Doubled ε-coordinates in the ambient fp-space of dimension 2n:
    /// entry k holds 2·(coefficient of ε_{k+1}).
    pub fn to_vec(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; 2 * n];
        // 2β_0 = 2(ε_n − ε_{n+1}); 2β_j = ε_{n−j} − ε_{n−j+1} + ε_{n+j} − ε_{n+j+1}.
        v[n - 1] += 2 * self.coeffs[0];
        v[n] -= 2 * self.coeffs[0];
        for j in 1..n {
            let c = self.coeffs[j];
            v[n - j - 1] += c;
            v[n - j] -= c;
            v[n + j - 1] += c;
            v[n + j] -= c;
        }
        v
    }

    /// Reconstruct β-coordinates from doubled ε-coordinates.
    pub fn from_vec(n: usize, v: &[i64]) -> Result<Self> {
        let mut coeffs = vec![0i64; n];
        // First-half entries satisfy v_k = c_{n−k} − c_{n−k+1} for k < n and
        // v_n = 2c_0 − c_1 (indices 1-based, c_n := 0).
        let mut acc = 0i64;
        for k in 1..n {
            acc += v[k - 1];
            coeffs[n - k] = acc;
        }
        let twice_c0 = v[n - 1] + if n > 1 { coeffs[1] } else { 0 };
        if twice_c0 % 2 != 0 {
            return Err(Error::Parity("vector is not in the C_n root lattice".into()));
        }
        coeffs[0] = twice_c0 / 2;
        let sq: i64 = v.iter().map(|x| x * x).sum();
        let norm = match sq {
            4 => Norm::Short,
            8 => Norm::Long,
            _ => return Err(Error::Parity(format!("squared length {sq} is not a root length"))),
        };
        let out = Self { coeffs, norm };
        if out.to_vec(n) != v {
            return Err(Error::Parity("vector is not σ-symmetric".into()));
        }
        Ok(out)
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn negated(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            norm: self.norm,
        }
    }

    /// Inner product scaled by 4 (the dot product of doubled coordinates).
    pub fn dot4(&self, other: &RootC, n: usize) -> i64 {
        self.to_vec(n)
            .iter()
            .zip(other.to_vec(n))
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_orthogonal(&self, other: &RootC, n: usize) -> bool {
        self.dot4(other, n) == 0
    }

    /// Reflection of self in the hyperplane orthogonal to `mirror`.
    pub fn reflected(&self, mirror: &RootC, n: usize) -> Result<Self> {
        let num = 2 * self.dot4(mirror, n);
        let den = mirror.dot4(mirror, n);
        if num % den != 0 {
            return Err(Error::Parity("non-integral Cartan pairing".into()));
        }
        let c = num / den;
        let v: Vec<i64> = self
            .to_vec(n)
            .iter()
            .zip(mirror.to_vec(n))
            .map(|(a, b)| a - c * b)
            .collect();
        Self::from_vec(n, &v)
    }
}

/// All positive roots of Ψ (type C_n): n² of them, n long and n(n−1) short.
pub fn positive_roots_c(n: usize) -> Vec<RootC> {
    let simples: Vec<RootC> = (0..n).map(|j| RootC::simple(n, j)).collect();
    let mut all: BTreeSet<RootC> = simples.iter().cloned().collect();
    loop {
        let mut grew = false;
        for r in all.clone() {
            for s in &simples {
                let refl = r.reflected(s, n).expect("root reflections stay in the lattice");
                let pos = if refl.is_positive() { refl } else { refl.negated() };
                grew |= all.insert(pos);
            }
        }
        if !grew {
            return all.into_iter().collect();
        }
    }
}

/// Project a type A root on 2n dots into the folded space: fp(x) = (x+σx)/2.
pub fn fp_root(n: usize, r: &RootA) -> Result<RootC> {
    let n2 = 2 * n;
    let (i, j) = r.indices();
    if j > n2 {
        return Err(Error::IndexOutOfRange { index: j, context: format!("root on {n2} dots") });
    }
    let mut v = vec![0i64; n2];
    v[i - 1] += 1;
    v[j - 1] -= 1;
    v[n2 - j] += 1;
    v[n2 - i] -= 1;
    RootC::from_vec(n, &v)
}

/// Project a σ-invariant admissible set; errors if the set is not invariant.
pub fn fp_set(n: usize, b: &AdmissibleSetA) -> Result<Vec<RootC>> {
    if !b.is_sigma_invariant(2 * n) {
        return Err(Error::NotSigmaInvariant);
    }
    let mut out: BTreeSet<RootC> = BTreeSet::new();
    for r in b.roots() {
        out.insert(fp_root(n, r)?);
    }
    Ok(out.into_iter().collect())
}

/// Full preimage of a Ψ root among positive type A roots on 2n dots.
pub fn lift_root(n: usize, beta: &RootC) -> Vec<RootA> {
    let n2 = 2 * n;
    let mut out = Vec::new();
    for i in 1..=n2 {
        for j in i + 1..=n2 {
            let r = RootA::new(i, j).unwrap();
            if fp_root(n, &r).as_ref() == Ok(beta) {
                out.push(r);
            }
        }
    }
    out
}

/// A set of mutually orthogonal positive Ψ roots is admissible exactly when
/// the union of the full preimages of its members is itself an orthogonal
/// (hence admissible) type A set.
pub fn is_admissible_c(n: usize, set: &[RootC]) -> Result<bool> {
    for (k, a) in set.iter().enumerate() {
        if !a.is_positive() {
            return Err(Error::Parity(format!("root {k} is not positive")));
        }
        for b in &set[k + 1..] {
            if !a.is_orthogonal(b, n) {
                return Err(Error::NotOrthogonal);
            }
        }
    }
    let lifted: Vec<RootA> = set.iter().flat_map(|b| lift_root(n, b)).collect();
    Ok(AdmissibleSetA::new(lifted).is_ok())
}
