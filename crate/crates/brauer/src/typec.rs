//! The presented algebra on generators r_0..r_{n-1}, e_0..e_{n-1} and its
//! faithful diagram model.
//!
//! Words in the presentation are mapped into the 2n-strand diagram algebra by
//! the substitution φ: r_0 ↦ R_n, r_i ↦ R_{n−i}R_{n+i}, e_0 ↦ E_n,
//! e_i ↦ E_{n−i}E_{n+i}; the image is the span of the mirror-symmetric
//! diagrams, and all presentation-level identities are verified there. This
//! module builds the Weyl group W(C_n) of permutation diagrams, the
//! stabilizer/coset data of the reference sets B_{i,p}, the resulting normal
//! form δ^k·u·b_{p,i,p′}·v·w^op, and the rank counting formulas.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{evaluate_word, Diagram, Monomial, TokenA, WordA};
use crate::roots::{act_monomial, AdmissibleSetA, Norm, RootC};
use crate::{Error, Result};

/// Default bound on the rank for Weyl group and basis builds.
pub const WEYL_BOUND: usize = 5;
pub const BASIS_BOUND: usize = 4;

/// Generator tokens of the presented algebra, plus δ^{±1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TokenC {
    R(usize),
    E(usize),
    Delta,
    DeltaInv,
}

impl TokenC {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(TokenC::Delta),
            "D" => Ok(TokenC::DeltaInv),
            _ => {
                let idx = |t: &str| t.parse::<usize>().map_err(|_| Error::InvalidToken(s.to_string()));
                if let Some(rest) = s.strip_prefix('r') {
                    Ok(TokenC::R(idx(rest)?))
                } else if let Some(rest) = s.strip_prefix('e') {
                    Ok(TokenC::E(idx(rest)?))
                } else {
                    Err(Error::InvalidToken(s.to_string()))
                }
            }
        }
    }
}

impl fmt::Display for TokenC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenC::R(i) => write!(f, "r{i}"),
            TokenC::E(i) => write!(f, "e{i}"),
            TokenC::Delta => write!(f, "d"),
            TokenC::DeltaInv => write!(f, "D"),
        }
    }
}

impl Serialize for TokenC {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TokenC {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        TokenC::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A word in the presentation generators.
pub type WordC = Vec<TokenC>;

/// Parse a comma-separated word such as `r1,e0,d`.
pub fn parse_word_c(s: &str) -> Result<WordC> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| TokenC::parse(t.trim())).collect()
}

/// Token substitution onto 2n strands.
pub fn phi_word(word: &[TokenC], n: usize) -> Result<WordA> {
    let mut out = Vec::with_capacity(2 * word.len());
    let check = |i: usize| {
        if i >= n {
            Err(Error::IndexOutOfRange { index: i, context: format!("rank {n} presentation") })
        } else {
            Ok(())
        }
    };
    for tok in word {
        match tok {
            TokenC::R(0) => {
                check(0)?;
                out.push(TokenA::R(n));
            }
            TokenC::R(i) => {
                check(*i)?;
                out.push(TokenA::R(n - i));
                out.push(TokenA::R(n + i));
            }
            TokenC::E(0) => {
                check(0)?;
                out.push(TokenA::E(n));
            }
            TokenC::E(i) => {
                check(*i)?;
                out.push(TokenA::E(n - i));
                out.push(TokenA::E(n + i));
            }
            TokenC::Delta => out.push(TokenA::Delta),
            TokenC::DeltaInv => out.push(TokenA::DeltaInv),
        }
    }
    Ok(out)
}

/// Evaluate a presentation word as a diagram monomial on 2n strands.
pub fn eval_c(word: &[TokenC], n: usize) -> Result<Monomial> {
    evaluate_word(&phi_word(word, n)?, 2 * n)
}

/// y_i = r_{i−1}⋯r_1 r_0 r_1⋯r_{i−1}: the reflection with root
/// β_0+2β_1+⋯+2β_{i−1}.
pub fn y_word(i: usize) -> WordC {
    let mut w: WordC = (0..i).rev().map(TokenC::R).collect();
    w.extend((1..i).map(TokenC::R));
    w
}

/// z_i = r_{i−1}⋯r_1 e_0 r_1⋯r_{i−1}.
pub fn z_word(i: usize) -> WordC {
    let mut w: WordC = (1..i).rev().map(TokenC::R).collect();
    w.push(TokenC::E(0));
    w.extend((1..i).map(TokenC::R));
    w
}

/// b_i = z_1 z_2 ⋯ z_i.
pub fn b_word(i: usize) -> WordC {
    (1..=i).flat_map(z_word).collect()
}

fn check_layer(i: usize, p: usize, n: usize) -> Result<()> {
    if i > n || p > i {
        return Err(Error::IndexOutOfRange { index: p.max(i), context: format!("rank {n} layer") });
    }
    if (i - p) % 2 != 0 {
        return Err(Error::Parity(format!("i - p = {} is odd", i - p)));
    }
    Ok(())
}

/// e_{i,p} = e_{p+1} e_{p+3} ⋯ e_{i−1}.
pub fn e_strip_word(i: usize, p: usize, n: usize) -> Result<WordC> {
    check_layer(i, p, n)?;
    Ok((p + 1..i).step_by(2).map(TokenC::E).collect())
}

/// b_{p,i,p′} = e_{i,p} · b_i · e_{i,p′}.
pub fn b_pip_word(p: usize, i: usize, pp: usize, n: usize) -> Result<WordC> {
    let mut w = e_strip_word(i, p, n)?;
    w.extend(b_word(i));
    w.extend(e_strip_word(i, pp, n)?);
    Ok(w)
}

/// The nested central admissible set B_i on 2n dots: strands
/// (n+1−j, n+j) for j = 1..i.
pub fn b_set(n: usize, i: usize) -> Result<AdmissibleSetA> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, context: format!("rank {n} central set") });
    }
    AdmissibleSetA::from_pairs(&(1..=i).map(|j| (n + 1 - j, n + j)).collect::<Vec<_>>())
}

/// B_{i,p} = e_{p+1}e_{p+3}⋯e_{i−1} · B_i via the monoid action.
pub fn b_ip_set(n: usize, i: usize, p: usize) -> Result<AdmissibleSetA> {
    let strip = phi_word(&e_strip_word(i, p, n)?, n)?;
    Ok(crate::roots::act_word(&strip, &b_set(n, i)?))
}

/// A Weyl group element: a permutation diagram together with a fixed minimal
/// (and among minimal words lexicographically first) defining word in the
/// r-generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub word: WordC,
    pub monomial: Monomial,
}

impl WeylElement {
    pub fn op(&self) -> WeylElement {
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
            monomial: self.monomial.op(),
        }
    }
}

/// Closure of a generator list under multiplication, breadth-first, keeping
/// the first (minimal, lex-least) word reaching each diagram. Generators must
/// evaluate to δ-free monomials.
fn group_closure(n2: usize, gens: &[(WordC, Monomial)]) -> Vec<WeylElement> {
    let mut elements = vec![WeylElement {
        word: Vec::new(),
        monomial: Monomial::identity(n2),
    }];
    let mut index: HashMap<Diagram, usize> = HashMap::new();
    index.insert(Diagram::identity(n2), 0);
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        for (gw, gm) in gens {
            let m = cur.monomial.multiply(gm).expect("same strand count");
            debug_assert_eq!(m.delta_exp, 0, "group closure generators must be loop-free");
            if !index.contains_key(&m.diagram) {
                index.insert(m.diagram.clone(), elements.len());
                let mut word = cur.word.clone();
                word.extend(gw.iter().copied());
                elements.push(WeylElement { word, monomial: m });
            }
        }
        head += 1;
    }
    elements
}

/// The Weyl group W(C_n) realized as σ-fixed permutation diagrams on 2n
/// strands, with minimal defining words.
pub struct WeylGroup {
    n: usize,
    elements: Vec<WeylElement>,
    index: HashMap<Diagram, usize>,
}

impl WeylGroup {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_bounded(n, WEYL_BOUND)
    }

    pub fn build_bounded(n: usize, bound: usize) -> Result<Self> {
        if n > bound {
            return Err(Error::BoundExceeded { requested: n, bound });
        }
        let gens: Vec<(WordC, Monomial)> = (0..n)
            .map(|j| Ok((vec![TokenC::R(j)], eval_c(&[TokenC::R(j)], n)?)))
            .collect::<Result<_>>()?;
        let elements = group_closure(2 * n, &gens);
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, e)| (e.monomial.diagram.clone(), k))
            .collect();
        Ok(Self { n, elements, index })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in breadth-first order (increasing word length, lex within).
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element_for(&self, d: &Diagram) -> Option<&WeylElement> {
        self.index.get(d).map(|&k| &self.elements[k])
    }
}

/// 2^n · n!, the order of W(C_n).
pub fn weyl_order(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k).product()
}

/// Stabilizer and coset data for the reference set B_{i,p}: generators of the
/// stabilizer factors A_{i,p} and L_i together with their closures, the orbit
/// of B_{i,p}, and the minimal coset representatives D_{i,p}.
pub struct CosetData {
    pub i: usize,
    pub p: usize,
    pub a_generators: Vec<WordC>,
    pub l_generators: Vec<WordC>,
    pub a_elements: Vec<WeylElement>,
    pub l_elements: Vec<WeylElement>,
    /// Orbit representatives: for each set in the orbit of B_{i,p}, the
    /// first Weyl element (in breadth-first order) carrying B_{i,p} to it.
    pub d_reps: Vec<WeylElement>,
    pub orbit: Vec<AdmissibleSetA>,
}

/// Generators of A_{i,p}: r_j (j<p), the alternate crossings r_{p+2k−1},
/// the conjugated reflection t_{0,p} = y_{p+1} r_{p+1} y_{p+1}, and the
/// strand swaps t_{k,p} = r_{p+2k} r_{p+2k−1} r_{p+2k+1} r_{p+2k}.
pub fn a_generator_words(i: usize, p: usize, n: usize) -> Result<Vec<WordC>> {
    check_layer(i, p, n)?;
    let q = (i - p) / 2;
    let mut gens: Vec<WordC> = (0..p).map(|j| vec![TokenC::R(j)]).collect();
    for k in 1..=q {
        gens.push(vec![TokenC::R(p + 2 * k - 1)]);
    }
    if q >= 1 {
        let mut t0 = y_word(p + 1);
        t0.push(TokenC::R(p + 1));
        t0.extend(y_word(p + 1));
        gens.push(t0);
    }
    for k in 1..q {
        gens.push(vec![
            TokenC::R(p + 2 * k),
            TokenC::R(p + 2 * k - 1),
            TokenC::R(p + 2 * k + 1),
            TokenC::R(p + 2 * k),
        ]);
    }
    Ok(gens)
}

/// Generators of L_i: y_{i+1} and r_{i+1}, …, r_{n−1} (trivial for i = n).
pub fn l_generator_words(i: usize, n: usize) -> Result<Vec<WordC>> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, context: format!("rank {n} layer") });
    }
    if i == n {
        return Ok(Vec::new());
    }
    let mut gens = vec![y_word(i + 1)];
    gens.extend((i + 1..n).map(|j| vec![TokenC::R(j)]));
    Ok(gens)
}

pub fn stabilizer_and_cosets(w: &WeylGroup, i: usize, p: usize) -> Result<CosetData> {
    let n = w.rank();
    check_layer(i, p, n)?;
    let close = |words: &[WordC]| -> Result<Vec<WeylElement>> {
        let gens: Vec<(WordC, Monomial)> = words
            .iter()
            .map(|gw| Ok((gw.clone(), eval_c(gw, n)?)))
            .collect::<Result<_>>()?;
        Ok(group_closure(2 * n, &gens))
    };
    let a_generators = a_generator_words(i, p, n)?;
    let l_generators = l_generator_words(i, n)?;
    let a_elements = close(&a_generators)?;
    let l_elements = close(&l_generators)?;

    let base = b_ip_set(n, i, p)?;
    let mut seen: HashMap<AdmissibleSetA, usize> = HashMap::new();
    let mut d_reps = Vec::new();
    let mut orbit = Vec::new();
    for el in w.elements() {
        let image = act_monomial(&el.monomial, &base)?;
        if !seen.contains_key(&image) {
            seen.insert(image.clone(), d_reps.len());
            d_reps.push(el.clone());
            orbit.push(image);
        }
    }
    Ok(CosetData {
        i,
        p,
        a_generators,
        l_generators,
        a_elements,
        l_elements,
        d_reps,
        orbit,
    })
}

/// n!/(p!q!(n−i)!) with q = (i−p)/2: the predicted orbit size of B_{i,p}.
pub fn orbit_size_formula(n: usize, i: usize, p: usize) -> u64 {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    let q = (i - p) / 2;
    fact(n) / (fact(p) * fact(q) * fact(n - i))
}

/// A normal form δ^k · u · b_{p,i,p′} · v · w^op.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub k: i64,
    pub i: usize,
    pub p: usize,
    pub pp: usize,
    pub u_word: WordC,
    pub v_word: WordC,
    pub w_word: WordC,
}

/// The full normal-form basis: one tuple per symmetric diagram.
pub struct NormalFormBasis {
    n: usize,
    entries: Vec<(NormalForm, Monomial)>,
    index: HashMap<Diagram, usize>,
}

impl NormalFormBasis {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(NormalForm, Monomial)] {
        &self.entries
    }

    pub fn lookup(&self, d: &Diagram) -> Option<&(NormalForm, Monomial)> {
        self.index.get(d).map(|&k| &self.entries[k])
    }
}

/// Enumerate all tuples (i, p, p′, u ∈ D_{i,p}, v ∈ L_i, w ∈ D_{i,p′}) and
/// evaluate δ^k u b_{p,i,p′} v w^op; the diagrams obtained are pairwise
/// distinct symmetric diagrams and exhaust them.
pub fn normal_form_basis(w: &WeylGroup) -> Result<NormalFormBasis> {
    let n = w.rank();
    if n > BASIS_BOUND {
        return Err(Error::BoundExceeded { requested: n, bound: BASIS_BOUND });
    }
    let mut entries: Vec<(NormalForm, Monomial)> = Vec::new();
    let mut index: HashMap<Diagram, usize> = HashMap::new();
    for i in 0..=n {
        let l_elements = stabilizer_and_cosets(w, i, i)?.l_elements;
        let layers: Vec<usize> = (i % 2..=i).step_by(2).collect();
        let cosets: Vec<CosetData> = layers
            .iter()
            .map(|&p| stabilizer_and_cosets(w, i, p))
            .collect::<Result<_>>()?;
        // Blocks (p, p′) are independent; enumerate them in parallel and
        // merge in the fixed block order so output stays deterministic.
        let blocks: Vec<(&CosetData, &CosetData)> = cosets
            .iter()
            .flat_map(|left| cosets.iter().map(move |right| (left, right)))
            .collect();
        let results: Vec<Result<Vec<(NormalForm, Monomial)>>> = blocks
            .par_iter()
            .map(|(left, right)| {
                let core = eval_c(&b_pip_word(left.p, i, right.p, n)?, n)?;
                let mut block = Vec::new();
                for u in &left.d_reps {
                    let um = u.monomial.multiply(&core)?;
                    for v in &l_elements {
                        let uvm = um.multiply(&v.monomial)?;
                        for wrep in &right.d_reps {
                            let m = uvm.multiply(&wrep.monomial.op())?;
                            if !m.diagram.is_symmetric() {
                                return Err(Error::InvalidDiagram(
                                    "normal form produced an asymmetric diagram".into(),
                                ));
                            }
                            let nf = NormalForm {
                                k: m.delta_exp,
                                i,
                                p: left.p,
                                pp: right.p,
                                u_word: u.word.clone(),
                                v_word: v.word.clone(),
                                w_word: wrep.word.clone(),
                            };
                            block.push((nf, m));
                        }
                    }
                }
                Ok(block)
            })
            .collect();
        for block in results {
            for (nf, m) in block? {
                if index.contains_key(&m.diagram) {
                    return Err(Error::SizeMismatch(format!(
                        "normal form collision at (i,p,p')=({i},{},{})",
                        nf.p, nf.pp
                    )));
                }
                index.insert(m.diagram.clone(), entries.len());
                entries.push((nf, m));
            }
        }
    }
    if entries.len() as u64 != count_closed(n) {
        return Err(Error::SizeMismatch(format!(
            "normal form count {} differs from rank {}",
            entries.len(),
            count_closed(n)
        )));
    }
    Ok(NormalFormBasis { n, entries, index })
}

/// a_k by the recursion a_k = a_{k−1} + 2(k−1)·a_{k−2}, a_0 = a_1 = 1.
pub fn count_recursion(k: usize) -> u64 {
    let (mut prev, mut cur) = (1u64, 1u64);
    if k == 0 {
        return 1;
    }
    for m in 2..=k {
        let next = cur + 2 * (m as u64 - 1) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The closed double sum for a_{2n}:
/// Σ_i (Σ_{p+2q=i} n!/(p!q!(n−i)!))² · 2^{n−i}(n−i)!.
pub fn count_closed(n: usize) -> u64 {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    (0..=n)
        .map(|i| {
            let inner: u64 = (i % 2..=i)
                .step_by(2)
                .map(|p| {
                    let q = (i - p) / 2;
                    fact(n) / (fact(p) * fact(q) * fact(n - i))
                })
                .sum();
            inner * inner * (1u64 << (n - i)) * fact(n - i)
        })
        .sum()
}

/// One named relation check: both sides evaluated as exact monomials.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
}

/// Evaluate every defining and derived relation of the presentation at every
/// admissible index instantiation for rank n.
pub fn relation_suite_c(n: usize) -> Result<Vec<RelationCheck>> {
    let r = TokenC::R;
    let e = TokenC::E;
    let d = TokenC::Delta;
    let mut out = Vec::new();
    let mut check = |name: String, lhs: &[TokenC], rhs: &[TokenC]| -> Result<()> {
        let passed = eval_c(lhs, n)? == eval_c(rhs, n)?;
        out.push(RelationCheck { name, passed });
        Ok(())
    };

    for i in 0..n {
        check(format!("r_{i}^2 = 1"), &[r(i), r(i)], &[])?;
        check(format!("r_{i} e_{i} = e_{i}"), &[r(i), e(i)], &[e(i)])?;
        check(format!("e_{i} r_{i} = e_{i}"), &[e(i), r(i)], &[e(i)])?;
        if i == 0 {
            check("e_0^2 = d e_0".into(), &[e(0), e(0)], &[d, e(0)])?;
        } else {
            check(format!("e_{i}^2 = d^2 e_{i}"), &[e(i), e(i)], &[d, d, e(i)])?;
        }
        for j in 0..n {
            if i.abs_diff(j) >= 2 {
                check(format!("r_{i} r_{j} = r_{j} r_{i}"), &[r(i), r(j)], &[r(j), r(i)])?;
                check(format!("e_{i} r_{j} = r_{j} e_{i}"), &[e(i), r(j)], &[r(j), e(i)])?;
                check(format!("e_{i} e_{j} = e_{j} e_{i}"), &[e(i), e(j)], &[e(j), e(i)])?;
            }
            if i.abs_diff(j) == 1 && i > 0 && j > 0 {
                check(
                    format!("r_{i} r_{j} r_{i} = r_{j} r_{i} r_{j}"),
                    &[r(i), r(j), r(i)],
                    &[r(j), r(i), r(j)],
                )?;
                check(
                    format!("r_{j} r_{i} e_{j} = e_{i} e_{j}"),
                    &[r(j), r(i), e(j)],
                    &[e(i), e(j)],
                )?;
                check(
                    format!("r_{i} e_{j} r_{i} = r_{j} e_{i} r_{j}"),
                    &[r(i), e(j), r(i)],
                    &[r(j), e(i), r(j)],
                )?;
            }
        }
    }
    if n >= 2 {
        check(
            "r_1 r_0 r_1 r_0 = r_0 r_1 r_0 r_1".into(),
            &[r(1), r(0), r(1), r(0)],
            &[r(0), r(1), r(0), r(1)],
        )?;
        check("r_1 r_0 e_1 = r_0 e_1".into(), &[r(1), r(0), e(1)], &[r(0), e(1)])?;
        check(
            "r_1 e_0 r_1 e_0 = e_0 e_1 e_0".into(),
            &[r(1), e(0), r(1), e(0)],
            &[e(0), e(1), e(0)],
        )?;
        check(
            "r_1 r_0 r_1 e_0 = e_0 r_1 r_0 r_1".into(),
            &[r(1), r(0), r(1), e(0)],
            &[e(0), r(1), r(0), r(1)],
        )?;
        check("e_1 r_0 e_1 = d e_1".into(), &[e(1), r(0), e(1)], &[d, e(1)])?;
        check("e_1 e_0 e_1 = d e_1".into(), &[e(1), e(0), e(1)], &[d, e(1)])?;
        check("e_1 r_0 r_1 = e_1 r_0".into(), &[e(1), r(0), r(1)], &[e(1), r(0)])?;
        check("e_1 e_0 r_1 = e_1 e_0".into(), &[e(1), e(0), r(1)], &[e(1), e(0)])?;
        // op-duals of the last four node-0 relations.
        check("r_1 e_0 e_1 = e_0 e_1".into(), &[r(1), e(0), e(1)], &[e(0), e(1)])?;
        check(
            "e_0 e_1 e_0 = e_0 r_1 e_0".into(),
            &[e(0), e(1), e(0)],
            &[e(0), r(1), e(0)],
        )?;
        check(
            "e_1 r_0 r_1 e_0 = e_1 e_0".into(),
            &[e(1), r(0), r(1), e(0)],
            &[e(1), e(0)],
        )?;
        check(
            "r_0 r_1 e_0 r_1 = r_1 e_0 r_1 r_0".into(),
            &[r(0), r(1), e(0), r(1)],
            &[r(1), e(0), r(1), r(0)],
        )?;
        check(
            "e_0 r_1 e_0 r_1 = e_0 e_1 e_0".into(),
            &[e(0), r(1), e(0), r(1)],
            &[e(0), e(1), e(0)],
        )?;
    }
    // Chain relations for consecutive crossing-positive indices.
    for j in 2..n.saturating_sub(1) {
        for (a, c) in [(j - 1, j + 1), (j + 1, j - 1)] {
            check(
                format!("e_{a} r_{j} r_{a} = e_{a} e_{j} [chain {a}~{j}]"),
                &[e(a), r(j), r(a)],
                &[e(a), e(j)],
            )?;
            check(
                format!("r_{j} e_{a} e_{j} = r_{a} e_{j} [chain {a}~{j}]"),
                &[r(j), e(a), e(j)],
                &[r(a), e(j)],
            )?;
            check(
                format!("e_{a} r_{j} e_{a} = e_{a} [chain {a}~{j}]"),
                &[e(a), r(j), e(a)],
                &[e(a)],
            )?;
            check(
                format!("e_{j} e_{a} r_{j} = e_{j} r_{a} [chain {a}~{j}]"),
                &[e(j), e(a), r(j)],
                &[e(j), r(a)],
            )?;
            check(
                format!("e_{a} e_{j} e_{a} = e_{a} [chain {a}~{j}]"),
                &[e(a), e(j), e(a)],
                &[e(a)],
            )?;
            check(
                format!("e_{j} e_{a} r_{c} e_{j} = e_{j} r_{a} e_{c} e_{j} [chain {a}~{j}~{c}]"),
                &[e(j), e(a), r(c), e(j)],
                &[e(j), r(a), e(c), e(j)],
            )?;
            check(
                format!("e_{j} r_{a} r_{c} e_{j} = e_{j} e_{a} e_{c} e_{j} [chain {a}~{j}~{c}]"),
                &[e(j), r(a), r(c), e(j)],
                &[e(j), e(a), e(c), e(j)],
            )?;
        }
    }
    // Identities in the y/z elements.
    for i in 2..n {
        let cat = |parts: &[&[TokenC]]| -> WordC { parts.concat() };
        let zi = z_word(i);
        let zi1 = z_word(i + 1);
        let zim1 = z_word(i - 1);
        check(
            format!("e_{i} z_{} = e_{i} z_{i}", i + 1),
            &cat(&[&[e(i)], &zi1]),
            &cat(&[&[e(i)], &zi]),
        )?;
        check(
            format!("e_{} z_{} z_{i} z_{} = r_{i} r_{} e_{i} z_{i} z_{} z_{}", i - 1, i + 1, i - 1, i - 1, i + 1, i - 1),
            &cat(&[&[e(i - 1)], &zi1, &zi, &zim1]),
            &cat(&[&[r(i), r(i - 1), e(i)], &zi, &zi1, &zim1]),
        )?;
        check(
            format!("e_{i} z_{} z_{i} e_{i} = d^2 e_{i}", i + 1),
            &cat(&[&[e(i)], &zi1, &zi, &[e(i)]]),
            &[d, d, e(i)],
        )?;
    }
    Ok(out)
}

/// Find a minimal word w in the crossing generators with w·(base root) = β,
/// where the base root is β_0 for long roots and β_1 for short ones.
pub fn root_conjugator(n: usize, beta: &RootC) -> Result<WordC> {
    let base_idx = match beta.norm {
        Norm::Long => 0,
        Norm::Short => 1,
    };
    if base_idx >= n {
        return Err(Error::IndexOutOfRange { index: base_idx, context: format!("rank {n} root") });
    }
    let simples: Vec<RootC> = (0..n).map(|j| RootC::simple(n, j)).collect();
    let base = simples[base_idx].clone();
    let mut words: HashMap<RootC, WordC> = HashMap::new();
    let mut queue = VecDeque::new();
    words.insert(base.clone(), Vec::new());
    queue.push_back(base);
    while let Some(cur) = queue.pop_front() {
        if &cur == beta {
            return Ok(words[&cur].clone());
        }
        for (j, s) in simples.iter().enumerate() {
            let refl = cur.reflected(s, n)?;
            let pos = if refl.is_positive() { refl } else { refl.negated() };
            if !words.contains_key(&pos) {
                let mut word = vec![TokenC::R(j)];
                word.extend(words[&cur].iter().copied());
                words.insert(pos.clone(), word);
                queue.push_back(pos);
            }
        }
    }
    Err(Error::BasisLookup)
}

fn conjugated_generator(n: usize, beta: &RootC, base: fn(usize) -> TokenC) -> Result<Monomial> {
    let w = root_conjugator(n, beta)?;
    let base_idx = match beta.norm {
        Norm::Long => 0,
        Norm::Short => 1,
    };
    let mut word = w.clone();
    word.push(base(base_idx));
    word.extend(w.iter().rev());
    eval_c(&word, n)
}

/// e_β = w e_i w⁻¹ for w·β_i = β.
pub fn e_root(n: usize, beta: &RootC) -> Result<Monomial> {
    conjugated_generator(n, beta, TokenC::E)
}

/// r_β = w r_i w⁻¹: the reflection with root β.
pub fn r_root(n: usize, beta: &RootC) -> Result<Monomial> {
    conjugated_generator(n, beta, TokenC::R)
}

/// Rewrite e_β·b_{p,i,p′} into the normal form basis; the layer h of the
/// result satisfies h ∈ {i, i+1, i+2}.
pub fn rewrite_eb(
    basis: &NormalFormBasis,
    beta: &RootC,
    p: usize,
    i: usize,
    pp: usize,
) -> Result<NormalForm> {
    let n = basis.rank();
    let product = e_root(n, beta)?.multiply(&eval_c(&b_pip_word(p, i, pp, n)?, n)?)?;
    let (nf, _) = basis.lookup(&product.diagram).ok_or(Error::BasisLookup)?;
    if !(nf.i >= i && nf.i <= i + 2) {
        return Err(Error::SizeMismatch(format!(
            "layer {} outside {{{i},{},{}}}",
            nf.i,
            i + 1,
            i + 2
        )));
    }
    Ok(NormalForm { k: product.delta_exp, ..nf.clone() })
}

/// Closure of a set of diagrams under concatenation (loops discarded),
/// including the identity. Breadth-first, so the result is deterministic.
pub fn diagram_closure(n: usize, gens: &[Diagram]) -> Vec<Diagram> {
    let mut elements = vec![Diagram::identity(n)];
    let mut seen: std::collections::HashSet<Diagram> = elements.iter().cloned().collect();
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        for g in gens {
            let (d, _) = cur.concatenate(g).expect("same strand count");
            if seen.insert(d.clone()) {
                elements.push(d);
            }
        }
        head += 1;
    }
    elements
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_diagrams, parse_word_a};
    use crate::roots::{
        bottom_set, canonical_diagram, e_product, fp_set, height_set, lift_root,
        positive_roots_c, top_set,
    };
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn r(i: usize) -> TokenC {
        TokenC::R(i)
    }

    fn e(i: usize) -> TokenC {
        TokenC::E(i)
    }

    #[test]
    fn token_substitution() {
        assert_eq!(phi_word(&[r(0)], 2).unwrap(), parse_word_a("R2").unwrap());
        assert_eq!(phi_word(&[e(1)], 2).unwrap(), parse_word_a("E1,E3").unwrap());
        assert_eq!(
            phi_word(&parse_word_c("r1,e0,d").unwrap(), 3).unwrap(),
            parse_word_a("R2,R4,E3,d").unwrap()
        );
        assert!(phi_word(&[r(2)], 2).is_err());
        assert!(parse_word_c("x1").is_err());
    }

    #[test]
    fn evaluation_examples() {
        let n = 2;
        let phi_e1 = eval_c(&[e(1)], n).unwrap();
        assert_eq!(
            eval_c(&[e(1), e(0), e(1)], n).unwrap(),
            Monomial::new(1, phi_e1.diagram.clone())
        );
        assert_eq!(
            eval_c(&[e(1), r(0), e(1)], n).unwrap(),
            Monomial::new(1, phi_e1.diagram.clone())
        );
        let phi_e0 = eval_c(&[e(0)], n).unwrap();
        assert_eq!(
            eval_c(&[e(0), e(0)], n).unwrap(),
            Monomial::new(1, phi_e0.diagram)
        );
        assert_eq!(
            eval_c(&[e(1), e(1)], n).unwrap(),
            Monomial::new(2, phi_e1.diagram)
        );
    }

    #[test]
    fn images_are_symmetric() {
        for n in 1..=4usize {
            for j in 0..n {
                assert!(eval_c(&[r(j)], n).unwrap().diagram.is_symmetric());
                assert!(eval_c(&[e(j)], n).unwrap().diagram.is_symmetric());
            }
        }
    }

    #[test]
    fn relation_suite_passes() {
        for n in 2..=4usize {
            let report = relation_suite_c(n).unwrap();
            assert!(report.len() > 20);
            for check in &report {
                assert!(check.passed, "n={n}: relation failed: {}", check.name);
            }
        }
    }

    #[test]
    fn corrupted_relation_is_detected() {
        // e_0^2 = d^2 e_0 is false: the correct exponent is 1.
        let lhs = eval_c(&[e(0), e(0)], 2).unwrap();
        let rhs = eval_c(&[TokenC::Delta, TokenC::Delta, e(0)], 2).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn palindromic_words() {
        assert_eq!(y_word(1), vec![r(0)]);
        assert_eq!(z_word(1), vec![e(0)]);
        assert_eq!(y_word(2), vec![r(1), r(0), r(1)]);
        assert_eq!(z_word(3), vec![r(2), r(1), e(0), r(1), r(2)]);
    }

    #[test]
    fn y_and_z_commute_low() {
        let n = 4;
        for i in 2..=n {
            for yz in [y_word(i), z_word(i)] {
                for j in 0..=i - 2 {
                    for g in [vec![r(j)], vec![e(j)]] {
                        let lhs = eval_c(&[yz.clone(), g.clone()].concat(), n).unwrap();
                        let rhs = eval_c(&[g, yz.clone()].concat(), n).unwrap();
                        assert_eq!(lhs, rhs, "i={i} j={j}");
                    }
                }
                for j in 1..=n {
                    for other in [y_word(j), z_word(j)] {
                        let lhs = eval_c(&[yz.clone(), other.clone()].concat(), n).unwrap();
                        let rhs = eval_c(&[other, yz.clone()].concat(), n).unwrap();
                        assert_eq!(lhs, rhs, "i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn y_n_is_longest_crossing() {
        // φ(y_n) is the reflection swapping the outermost strands 1 and 2n.
        for n in 2..=4usize {
            let big = 2 * n;
            let mut pairs: Vec<(usize, usize)> = vec![(1, 2 * big), (big, big + 1)];
            pairs.extend((2..big).map(|i| (i, big + i)));
            let expected = Diagram::from_pairs(big, &pairs).unwrap();
            assert_eq!(
                eval_c(&y_word(n), n).unwrap(),
                Monomial::from_diagram(expected)
            );
        }
    }

    #[test]
    fn central_sets_and_strip_words() {
        let n = 3;
        assert_eq!(b_set(n, 2).unwrap().pairs(), vec![(2, 5), (3, 4)]);
        assert_eq!(b_ip_set(n, 2, 2).unwrap(), b_set(n, 2).unwrap());
        assert_eq!(b_ip_set(n, 2, 0).unwrap().pairs(), vec![(2, 3), (4, 5)]);
        assert_eq!(e_strip_word(3, 1, n).unwrap(), vec![e(2)]);
        assert!(e_strip_word(3, 2, n).is_err());
        assert!(b_pip_word(1, 5, 1, n).is_err());
    }

    #[test]
    fn b_words_evaluate_to_canonical_diagrams() {
        for n in 2..=3usize {
            for i in 0..=n {
                let m = eval_c(&b_word(i), n).unwrap();
                // δ^{-i}·φ(b_i) is an idempotent.
                let ehat = Monomial::new(m.delta_exp - i as i64, m.diagram.clone());
                assert_eq!(ehat.multiply(&ehat).unwrap(), ehat);
                for p in (i % 2..=i).step_by(2) {
                    for pp in (i % 2..=i).step_by(2) {
                        let m = eval_c(&b_pip_word(p, i, pp, n).unwrap(), n).unwrap();
                        assert_eq!(m.height(), 0);
                        let top = b_ip_set(n, i, p).unwrap();
                        let bottom = b_ip_set(n, i, pp).unwrap();
                        assert_eq!(top_set(&m), top);
                        assert_eq!(bottom_set(&m), bottom);
                        assert_eq!(
                            m.diagram,
                            canonical_diagram(2 * n, &top, &bottom).unwrap()
                        );
                        assert_eq!(height_set(2 * n, &top).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_group_orders() {
        for n in 1..=4usize {
            let w = WeylGroup::build(n).unwrap();
            assert_eq!(w.order() as u64, weyl_order(n));
            for el in w.elements() {
                assert!(el.monomial.diagram.is_symmetric());
                assert!(el.monomial.diagram.is_permutation());
                assert_eq!(el.monomial.delta_exp, 0);
                assert_eq!(eval_c(&el.word, n).unwrap(), el.monomial);
            }
            // Words are minimal and first by breadth-first construction.
            assert!(w.elements()[0].word.is_empty());
            for j in 0..n {
                let g = eval_c(&[r(j)], n).unwrap();
                assert_eq!(w.element_for(&g.diagram).unwrap().word, vec![r(j)]);
            }
        }
        assert!(WeylGroup::build(7).is_err());
    }

    #[test]
    fn sigma_fixed_permutations_are_exactly_the_weyl_group() {
        let n = 3;
        let w = WeylGroup::build(n).unwrap();
        let count = enumerate_diagrams(2 * n)
            .unwrap()
            .filter(|d| d.is_symmetric() && d.is_permutation())
            .count();
        assert_eq!(count, w.order());
    }

    #[test]
    fn coset_data_orders() {
        for n in 2..=4usize {
            let w = WeylGroup::build(n).unwrap();
            let fact = |k: usize| (1..=k as u64).product::<u64>();
            for i in 0..=n {
                for p in (i % 2..=i).step_by(2) {
                    let q = (i - p) / 2;
                    let data = stabilizer_and_cosets(&w, i, p).unwrap();
                    assert_eq!(
                        data.a_elements.len() as u64,
                        (1u64 << i) * fact(p) * fact(q),
                        "A order at n={n} i={i} p={p}"
                    );
                    assert_eq!(data.l_elements.len() as u64, weyl_order(n - i));
                    assert_eq!(
                        data.d_reps.len() as u64,
                        orbit_size_formula(n, i, p),
                        "orbit size at n={n} i={i} p={p}"
                    );
                    assert_eq!(
                        (data.a_elements.len() * data.l_elements.len() * data.d_reps.len()) as u64,
                        weyl_order(n)
                    );
                }
            }
        }
    }

    #[test]
    fn stabilizer_fixes_reference_words() {
        for n in 2..=3usize {
            let w = WeylGroup::build(n).unwrap();
            for i in 0..=n {
                for p in (i % 2..=i).step_by(2) {
                    let data = stabilizer_and_cosets(&w, i, p).unwrap();
                    let bpii = eval_c(&b_pip_word(p, i, i, n).unwrap(), n).unwrap();
                    for gw in &data.a_generators {
                        let g = eval_c(gw, n).unwrap();
                        assert_eq!(g.multiply(&bpii).unwrap(), bpii, "A gen at i={i} p={p}");
                    }
                    let strip = eval_c(&e_strip_word(i, p, n).unwrap(), n).unwrap();
                    for gw in &data.l_generators {
                        let g = eval_c(gw, n).unwrap();
                        assert_eq!(
                            g.multiply(&bpii).unwrap(),
                            bpii.multiply(&g).unwrap(),
                            "L gen at i={i} p={p}"
                        );
                        assert_eq!(g.multiply(&strip).unwrap(), strip.multiply(&g).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn every_weyl_element_factors_over_cosets() {
        for n in 2..=3usize {
            let w = WeylGroup::build(n).unwrap();
            for i in 0..=n {
                for p in (i % 2..=i).step_by(2) {
                    let data = stabilizer_and_cosets(&w, i, p).unwrap();
                    let bpii = eval_c(&b_pip_word(p, i, i, n).unwrap(), n).unwrap();
                    for el in w.elements() {
                        let target = el.monomial.multiply(&bpii).unwrap();
                        let found = data.d_reps.iter().any(|u| {
                            data.l_elements.iter().any(|v| {
                                u.monomial
                                    .multiply(&bpii)
                                    .unwrap()
                                    .multiply(&v.monomial)
                                    .unwrap()
                                    == target
                            })
                        });
                        assert!(found, "no factorization at n={n} i={i} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn orbits_cover_all_symmetric_sets() {
        // Every mirror-symmetric admissible set with invariants (i, p) is
        // reached from B_{i,p} by the Weyl group.
        for n in 2..=3usize {
            let w = WeylGroup::build(n).unwrap();
            let mut orbits: HashMap<(usize, usize), Vec<AdmissibleSetA>> = HashMap::new();
            for i in 0..=n {
                for p in (i % 2..=i).step_by(2) {
                    let data = stabilizer_and_cosets(&w, i, p).unwrap();
                    orbits.insert((i, p), data.orbit);
                }
            }
            let mut total = 0;
            for d in enumerate_diagrams(2 * n).unwrap() {
                let m = Monomial::from_diagram(d);
                let b = top_set(&m);
                if !b.is_sigma_invariant(2 * n) {
                    continue;
                }
                total += 1;
                let i = b.len();
                let p = b
                    .roots()
                    .iter()
                    .filter(|rt| rt.mirrored(2 * n) == **rt)
                    .count();
                assert!(
                    orbits[&(i, p)].contains(&b),
                    "set {:?} missing from orbit ({i},{p})",
                    b.pairs()
                );
            }
            // Orbit sizes add up to the total number of symmetric sets.
            let covered: usize = orbits.values().map(|o| o.len()).sum();
            let distinct_tops: std::collections::HashSet<_> = enumerate_diagrams(2 * n)
                .unwrap()
                .map(|d| top_set(&Monomial::from_diagram(d)))
                .filter(|b| b.is_sigma_invariant(2 * n))
                .collect();
            let _ = total;
            assert_eq!(covered, distinct_tops.len());
        }
    }

    #[test]
    fn counting_formulas() {
        let table = [1u64, 1, 3, 7, 25, 81, 331, 1303, 5937];
        for (k, &v) in table.iter().enumerate() {
            assert_eq!(count_recursion(k), v, "recursion at {k}");
        }
        assert_eq!(count_recursion(8), 1303 + 14 * 331);
        for n in 0..=4usize {
            assert_eq!(count_closed(n), count_recursion(2 * n), "closed at {n}");
        }
    }

    #[test]
    fn normal_form_small_ranks() {
        for n in 2..=3usize {
            let w = WeylGroup::build(n).unwrap();
            let basis = normal_form_basis(&w).unwrap();
            assert_eq!(basis.len() as u64, count_closed(n));
            for (nf, m) in basis.entries() {
                assert_eq!(nf.k, m.delta_exp);
                assert!(m.diagram.is_symmetric());
            }
        }
        let w2 = WeylGroup::build(2).unwrap();
        let basis = normal_form_basis(&w2).unwrap();
        let mut by_layer = [0usize; 3];
        for (nf, _) in basis.entries() {
            by_layer[nf.i] += 1;
        }
        assert_eq!(by_layer, [8, 8, 9]);
    }

    #[test]
    fn normal_form_round_trips_json() {
        let w = WeylGroup::build(2).unwrap();
        let basis = normal_form_basis(&w).unwrap();
        let (nf, _) = &basis.entries()[10];
        let s = serde_json::to_string(nf).unwrap();
        let back: NormalForm = serde_json::from_str(&s).unwrap();
        assert_eq!(nf, &back);
        assert!(s.contains("\"pp\""));
    }

    #[test]
    fn conjugated_generators_match_projection_preimages() {
        // φ(e_β) is the strand product over the full preimage of β.
        for n in 2..=3usize {
            for beta in positive_roots_c(n) {
                let m = e_root(n, &beta).unwrap();
                assert_eq!(m.delta_exp, 0);
                let lift = crate::roots::AdmissibleSetA::new(lift_root(n, &beta)).unwrap();
                assert_eq!(m, e_product(2 * n, &lift).unwrap());
                // r_β is the corresponding reflection: an involution.
                let rm = r_root(n, &beta).unwrap();
                assert_eq!(
                    rm.multiply(&rm).unwrap(),
                    Monomial::identity(2 * n)
                );
                assert_eq!(rm.multiply(&m).unwrap(), m);
                assert_eq!(m.multiply(&rm).unwrap(), m);
            }
        }
    }

    #[test]
    fn long_root_elements_are_z_words() {
        let n = 4;
        for i in 1..=n {
            // γ = β_0 + 2β_1 + … + 2β_{i−1}.
            let mut coeffs = vec![0i64; n];
            coeffs[0] = 1;
            for c in coeffs.iter_mut().take(i).skip(1) {
                *c = 2;
            }
            let gamma = RootC { coeffs, norm: Norm::Long };
            assert_eq!(e_root(n, &gamma).unwrap(), eval_c(&z_word(i), n).unwrap());
            assert_eq!(r_root(n, &gamma).unwrap(), eval_c(&y_word(i), n).unwrap());
        }
        assert_eq!(e_root(2, &RootC::simple(2, 0)).unwrap(), eval_c(&[e(0)], 2).unwrap());
    }

    #[test]
    fn root_pair_relations() {
        // Identities for e_β, r_β over pairs of positive roots.
        for n in 2..=3usize {
            let roots = positive_roots_c(n);
            let id = Monomial::identity(2 * n);
            let _ = &id;
            for beta in &roots {
                let (eb, rb) = (e_root(n, beta).unwrap(), r_root(n, beta).unwrap());
                let exp = if beta.norm == Norm::Short { 2 } else { 1 };
                assert_eq!(
                    eb.multiply(&eb).unwrap(),
                    Monomial::new(exp, eb.diagram.clone())
                );
                assert_eq!(eb.multiply(&rb).unwrap(), eb);
                assert_eq!(rb.multiply(&eb).unwrap(), eb);
            }
            for beta in &roots {
                for gamma in &roots {
                    if beta == gamma {
                        continue;
                    }
                    let dot = beta.dot4(gamma, n);
                    let (eb, rb) = (e_root(n, beta).unwrap(), r_root(n, beta).unwrap());
                    let (eg, rg) = (e_root(n, gamma).unwrap(), r_root(n, gamma).unwrap());
                    let prod = |xs: &[&Monomial]| {
                        xs.iter()
                            .fold(Monomial::identity(2 * n), |acc, x| acc.multiply(x).unwrap())
                    };
                    if beta.norm == Norm::Short && gamma.norm == Norm::Short && dot.abs() == 4 {
                        // (β,γ) = ±1, both short.
                        assert_eq!(prod(&[&eb, &rg, &eb]), eb);
                        assert_eq!(prod(&[&rb, &rg, &eb]), prod(&[&eg, &rb, &rg]));
                        assert_eq!(prod(&[&rb, &rg, &eb]), prod(&[&eg, &eb]));
                        assert_eq!(prod(&[&eb, &eg, &eb]), eb);
                    }
                    if beta.norm == Norm::Short && gamma.norm == Norm::Long && dot.abs() == 4 {
                        // The node-0/1 relations with 1 ↦ β and 0 ↦ γ.
                        assert_eq!(prod(&[&rb, &rg, &rb, &rg]), prod(&[&rg, &rb, &rg, &rb]));
                        assert_eq!(prod(&[&rb, &rg, &eb]), prod(&[&rg, &eb]));
                        assert_eq!(
                            prod(&[&eb, &rg, &eb]),
                            Monomial::new(1, eb.diagram.clone())
                        );
                        assert_eq!(
                            prod(&[&eb, &eg, &eb]),
                            Monomial::new(1, eb.diagram.clone())
                        );
                        assert_eq!(prod(&[&eb, &rg, &rb]), prod(&[&eb, &rg]));
                        assert_eq!(prod(&[&eb, &eg, &rb]), prod(&[&eb, &eg]));
                        assert_eq!(prod(&[&rb, &eg, &rb, &eg]), prod(&[&eg, &eb, &eg]));
                        assert_eq!(
                            prod(&[&rb, &rg, &rb, &eg]),
                            prod(&[&eg, &rb, &rg, &rb])
                        );
                        assert_eq!(prod(&[&rb, &eg, &eb]), prod(&[&eg, &eb]));
                        assert_eq!(prod(&[&eb, &rg, &rb, &eg]), prod(&[&eb, &eg]));
                    }
                    if dot == 0 && beta.norm == Norm::Long && gamma.norm == Norm::Long {
                        assert_eq!(prod(&[&eb, &eg]), prod(&[&eg, &eb]));
                    }
                    if dot == 0 && beta.norm == Norm::Short && gamma.norm == Norm::Short {
                        // Check whether β − γ = ±α for a long positive α.
                        let diff: Vec<i64> = beta
                            .to_vec(n)
                            .iter()
                            .zip(gamma.to_vec(n))
                            .map(|(a, b)| a - b)
                            .collect();
                        let alpha = RootC::from_vec(n, &diff)
                            .ok()
                            .map(|r| if r.is_positive() { r } else { r.negated() });
                        if let Some(alpha) = alpha.filter(|a| a.norm == Norm::Long) {
                            let ra = r_root(n, &alpha).unwrap();
                            let lhs = prod(&[&eb, &eg]);
                            let rhs = Monomial::new(1, prod(&[&ra, &eg]).diagram.clone());
                            let lhs2 = prod(&[&eg, &eb]);
                            let rhs2 = Monomial::new(1, prod(&[&ra, &eb]).diagram.clone());
                            assert!(lhs == rhs || lhs2 == rhs2);
                            assert_ne!(prod(&[&eb, &eg]), prod(&[&eg, &eb]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rewrite_products_into_basis() {
        let n = 2;
        let w = WeylGroup::build(n).unwrap();
        let basis = normal_form_basis(&w).unwrap();
        for beta in positive_roots_c(n) {
            for i in 0..=n {
                for p in (i % 2..=i).step_by(2) {
                    for pp in (i % 2..=i).step_by(2) {
                        let nf = rewrite_eb(&basis, &beta, p, i, pp).unwrap();
                        assert!(nf.i >= i && nf.i <= i + 2);
                        if nf.i == i {
                            assert!(nf.w_word.is_empty(), "w must be trivial when h=i");
                            assert_eq!(nf.pp, pp);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn op_commutes_with_substitution() {
        let mut rng = StdRng::seed_from_u64(31);
        let n = 3;
        for _ in 0..200 {
            let len = rng.gen_range(0..10);
            let word: WordC = (0..len)
                .map(|_| {
                    let j = rng.gen_range(0..n);
                    if rng.gen_bool(0.5) {
                        TokenC::R(j)
                    } else {
                        TokenC::E(j)
                    }
                })
                .collect();
            let reversed: WordC = word.iter().rev().copied().collect();
            assert_eq!(
                eval_c(&reversed, n).unwrap(),
                eval_c(&word, n).unwrap().op()
            );
        }
    }

    #[test]
    fn rank_one_splitting() {
        // The 2n-strand monoid is generated by the (n−1)-rank submonoid on
        // both sides of the five middle elements 1, e_{n−1}, r_{n−1}, y_n, z_n.
        for n in 2..=3usize {
            let mut sub_gens = Vec::new();
            for j in 0..n - 1 {
                sub_gens.push(eval_c(&[r(j)], n).unwrap().diagram);
                sub_gens.push(eval_c(&[e(j)], n).unwrap().diagram);
            }
            let sub = diagram_closure(2 * n, &sub_gens);
            let middles = [
                Vec::new(),
                vec![e(n - 1)],
                vec![r(n - 1)],
                y_word(n),
                z_word(n),
            ];
            let mut produced = std::collections::HashSet::new();
            for a in &sub {
                for mid in &middles {
                    let am = a.concatenate(&eval_c(mid, n).unwrap().diagram).unwrap().0;
                    for b in &sub {
                        produced.insert(am.concatenate(b).unwrap().0);
                    }
                }
            }
            assert_eq!(produced.len() as u64, count_closed(n));
            for d in &produced {
                assert!(d.is_symmetric());
            }
        }
    }

    #[test]
    fn projected_tops_of_images_are_admissible() {
        // fp of the top of any generator image is an admissible C set.
        for n in 2..=3usize {
            for j in 0..n {
                let m = eval_c(&[e(j)], n).unwrap();
                let y = fp_set(n, &top_set(&m)).unwrap();
                assert!(crate::roots::is_admissible_c(n, &y).unwrap());
            }
        }
    }
}
