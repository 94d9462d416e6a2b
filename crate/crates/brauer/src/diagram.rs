//! Brauer diagrams on N strands and their monoid and algebra structure.
//!
//! A diagram is a perfect matching on 2N dots: N on the top row, N on the
//! bottom. Dots are 1-based: top dots are 1..N left to right, bottom dots are
//! N+1..2N left to right (bottom dot j of the row is N+j). Multiplication is
//! concatenation; every closed loop formed in the middle becomes a factor δ,
//! tracked as an integer exponent on [`Monomial`].

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// Default bound on the strand count for exhaustive enumeration.
pub const ENUMERATION_BOUND: usize = 8;

/// A Brauer diagram: a fixed-point-free involution on 2N dots.
///
/// Stored as the partner array of the involution (0-based internally), which
/// is already a canonical form: equality, hashing and ordering on it agree
/// with equality and lexicographic ordering of the sorted pair list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    partner: Vec<usize>,
}

impl Diagram {
    /// The identity diagram: top i joined to bottom i.
    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0; 2 * n];
        for i in 0..n {
            partner[i] = n + i;
            partner[n + i] = i;
        }
        Self { n, partner }
    }

    /// Build a diagram from 1-based dot pairs; dots 1..N top, N+1..2N bottom.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if pairs.len() != n {
            return Err(Error::InvalidDiagram(format!(
                "expected {n} pairs, got {}",
                pairs.len()
            )));
        }
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in pairs {
            if a == b || a == 0 || b == 0 || a > 2 * n || b > 2 * n {
                return Err(Error::InvalidDiagram(format!("bad pair ({a},{b})")));
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidDiagram(format!("dot reused in ({},{})", a + 1, b + 1)));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Ok(Self { n, partner })
    }

    /// Crossing generator: top i and i+1 exchanged, everything else vertical.
    pub fn generator_r(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                context: format!("R generator on {n} strands"),
            });
        }
        let mut d = Self::identity(n);
        d.swap_dots(i - 1, i);
        Ok(d)
    }

    /// Horizontal generator: top i--i+1 and bottom i--i+1 joined.
    pub fn generator_e(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                context: format!("E generator on {n} strands"),
            });
        }
        let mut d = Self::identity(n);
        d.join(i - 1, i);
        d.join(n + i - 1, n + i);
        Ok(d)
    }

    fn swap_dots(&mut self, a: usize, b: usize) {
        let (pa, pb) = (self.partner[a], self.partner[b]);
        self.partner[a] = pb;
        self.partner[b] = pa;
        self.partner[pa] = b;
        self.partner[pb] = a;
    }

    fn join(&mut self, a: usize, b: usize) {
        self.partner[a] = b;
        self.partner[b] = a;
    }

    pub fn n_strands(&self) -> usize {
        self.n
    }

    /// Partner of a 1-based dot.
    pub fn partner(&self, dot: usize) -> usize {
        self.partner[dot - 1] + 1
    }

    /// Canonical sorted pair list (1-based, each pair ascending).
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n);
        for d in 0..2 * self.n {
            let p = self.partner[d];
            if d < p {
                out.push((d + 1, p + 1));
            }
        }
        out
    }

    /// Horizontal strands of the top row, as 1-based column pairs.
    pub fn top_strands(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter_map(|d| {
                let p = self.partner[d];
                (d < p && p < self.n).then_some((d + 1, p + 1))
            })
            .collect()
    }

    /// Horizontal strands of the bottom row, as 1-based column pairs.
    pub fn bottom_strands(&self) -> Vec<(usize, usize)> {
        (self.n..2 * self.n)
            .filter_map(|d| {
                let p = self.partner[d];
                (d < p).then(|| (d + 1 - self.n, p + 1 - self.n))
            })
            .collect()
    }

    /// True when the diagram has no horizontal strands (a permutation diagram).
    pub fn is_permutation(&self) -> bool {
        (0..self.n).all(|d| self.partner[d] >= self.n)
    }

    /// Concatenate self above other; returns the product diagram and the
    /// number of closed loops formed in the middle.
    pub fn concatenate(&self, other: &Diagram) -> Result<(Diagram, usize)> {
        let n = self.n;
        if other.n != n {
            return Err(Error::StrandMismatch { left: n, right: other.n });
        }
        // Result dots: top = self's top (0..n), bottom = other's bottom (n..2n).
        // Interface nodes are self's bottom row glued to other's top row.
        let mut partner = vec![usize::MAX; 2 * n];
        let mut seen_mid = vec![false; n];

        // Walk from an endpoint in the result boundary to its mate.
        // Encoding of walk positions: (true, d) = dot d of self, (false, d) of other.
        let trace = |start_self: bool, start: usize, seen_mid: &mut Vec<bool>| -> (bool, usize) {
            let (mut in_self, mut cur) = (start_self, start);
            loop {
                let next = if in_self { self.partner[cur] } else { other.partner[cur] };
                if in_self && next < n {
                    return (true, next); // landed on result top
                }
                if !in_self && next >= n {
                    return (false, next); // landed on result bottom
                }
                // Crossed the interface: self bottom k <-> other top k.
                if in_self {
                    let k = next - n;
                    seen_mid[k] = true;
                    in_self = false;
                    cur = k;
                } else {
                    let k = next;
                    seen_mid[k] = true;
                    in_self = true;
                    cur = n + k;
                }
            }
        };

        for d in 0..n {
            if partner[d] != usize::MAX {
                continue;
            }
            let (end_self, end) = trace(true, d, &mut seen_mid);
            let res_end = if end_self { end } else { end };
            partner[d] = res_end;
            partner[res_end] = d;
        }
        for d in n..2 * n {
            if partner[d] != usize::MAX {
                continue;
            }
            let (end_self, end) = trace(false, d, &mut seen_mid);
            debug_assert!(!end_self, "bottom endpoint must close on the bottom row");
            partner[d] = end;
            partner[end] = d;
        }

        // Remaining untouched interface nodes lie on closed loops.
        let mut loops = 0;
        for k in 0..n {
            if seen_mid[k] {
                continue;
            }
            loops += 1;
            // Follow the cycle through alternating self/other edges.
            let (mut in_self, mut cur) = (true, n + k);
            loop {
                let next = if in_self { self.partner[cur] } else { other.partner[cur] };
                let mid = if in_self { next - n } else { next };
                if seen_mid[mid] && mid == k && !in_self {
                    // fall through below; loop closes when we return to start
                }
                seen_mid[mid] = true;
                if in_self {
                    in_self = false;
                    cur = mid;
                } else {
                    in_self = true;
                    cur = n + mid;
                }
                if in_self && cur == n + k {
                    break;
                }
            }
        }

        Ok((Diagram { n, partner }, loops))
    }

    /// Reflect about the central vertical axis: column j becomes N+1-j.
    pub fn mirrored(&self) -> Diagram {
        let n = self.n;
        let refl = |d: usize| if d < n { n - 1 - d } else { n + (2 * n - 1 - d) };
        let mut partner = vec![0; 2 * n];
        for d in 0..2 * n {
            partner[refl(d)] = refl(self.partner[d]);
        }
        Diagram { n, partner }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.mirrored()
    }

    /// Swap the top and bottom rows.
    pub fn flipped(&self) -> Diagram {
        let n = self.n;
        let flip = |d: usize| if d < n { d + n } else { d - n };
        let mut partner = vec![0; 2 * n];
        for d in 0..2 * n {
            partner[flip(d)] = flip(self.partner[d]);
        }
        Diagram { n, partner }
    }

    /// Minimal crossing number of a drawing: the number of unordered strand
    /// pairs whose four endpoints alternate around the rectangle boundary
    /// (top row left to right, then bottom row right to left).
    pub fn height(&self) -> usize {
        let n = self.n;
        // Boundary position of a 0-based dot.
        let pos = |d: usize| if d < n { d } else { 2 * n - 1 - (d - n) };
        let strands: Vec<(usize, usize)> = (0..2 * n)
            .filter(|&d| d < self.partner[d])
            .map(|d| {
                let (p, q) = (pos(d), pos(self.partner[d]));
                if p < q {
                    (p, q)
                } else {
                    (q, p)
                }
            })
            .collect();
        let mut count = 0;
        for (i, &(a, b)) in strands.iter().enumerate() {
            for &(c, d) in &strands[i + 1..] {
                let c_in = a < c && c < b;
                let d_in = a < d && d < b;
                if c_in != d_in {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.pairs())
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Diagram", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("pairs", &self.pairs())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            pairs: Vec<(usize, usize)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Diagram::from_pairs(raw.n, &raw.pairs).map_err(serde::de::Error::custom)
    }
}

/// A scalar multiple δ^k of a diagram: the monomials of the diagram algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub delta_exp: i64,
    #[serde(flatten)]
    pub diagram: Diagram,
}

impl Monomial {
    pub fn new(delta_exp: i64, diagram: Diagram) -> Self {
        Self { delta_exp, diagram }
    }

    pub fn from_diagram(diagram: Diagram) -> Self {
        Self { delta_exp: 0, diagram }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(Diagram::identity(n))
    }

    pub fn n_strands(&self) -> usize {
        self.diagram.n_strands()
    }

    /// Concatenation product; closed loops raise the δ-exponent.
    pub fn multiply(&self, other: &Monomial) -> Result<Monomial> {
        let (diagram, loops) = self.diagram.concatenate(&other.diagram)?;
        Ok(Monomial {
            delta_exp: self.delta_exp + other.delta_exp + loops as i64,
            diagram,
        })
    }

    /// Mirror automorphism σ.
    pub fn sigma(&self) -> Monomial {
        Monomial {
            delta_exp: self.delta_exp,
            diagram: self.diagram.mirrored(),
        }
    }

    /// Anti-involution: swap top and bottom rows.
    pub fn op(&self) -> Monomial {
        Monomial {
            delta_exp: self.delta_exp,
            diagram: self.diagram.flipped(),
        }
    }

    pub fn height(&self) -> usize {
        self.diagram.height()
    }
}

/// Generator tokens of the type A algebra, plus δ^{±1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenA {
    R(usize),
    E(usize),
    Delta,
    DeltaInv,
}

impl TokenA {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(TokenA::Delta),
            "D" => Ok(TokenA::DeltaInv),
            _ => {
                let idx = |t: &str| t.parse::<usize>().map_err(|_| Error::InvalidToken(s.to_string()));
                if let Some(rest) = s.strip_prefix('R') {
                    Ok(TokenA::R(idx(rest)?))
                } else if let Some(rest) = s.strip_prefix('E') {
                    Ok(TokenA::E(idx(rest)?))
                } else {
                    Err(Error::InvalidToken(s.to_string()))
                }
            }
        }
    }
}

impl fmt::Display for TokenA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenA::R(i) => write!(f, "R{i}"),
            TokenA::E(i) => write!(f, "E{i}"),
            TokenA::Delta => write!(f, "d"),
            TokenA::DeltaInv => write!(f, "D"),
        }
    }
}

impl Serialize for TokenA {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TokenA {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        TokenA::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A word in the type A generators.
pub type WordA = Vec<TokenA>;

/// Parse a comma-separated word such as `R1,E2,d`.
pub fn parse_word_a(s: &str) -> Result<WordA> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| TokenA::parse(t.trim())).collect()
}

/// The monomial of a single generator token.
pub fn token_monomial_a(tok: &TokenA, n: usize) -> Result<Monomial> {
    Ok(match tok {
        TokenA::R(i) => Monomial::from_diagram(Diagram::generator_r(n, *i)?),
        TokenA::E(i) => Monomial::from_diagram(Diagram::generator_e(n, *i)?),
        TokenA::Delta => Monomial::new(1, Diagram::identity(n)),
        TokenA::DeltaInv => Monomial::new(-1, Diagram::identity(n)),
    })
}

/// Evaluate a word left to right on `n` strands; the empty word is the identity.
pub fn evaluate_word(word: &[TokenA], n: usize) -> Result<Monomial> {
    let mut acc = Monomial::identity(n);
    for tok in word {
        acc = acc.multiply(&token_monomial_a(tok, n)?)?;
    }
    Ok(acc)
}

/// Lazy enumeration of all diagrams on `n` strands, in lexicographic order of
/// the canonical pair list.
pub struct DiagramIter {
    n: usize,
    // Stack of (dot, partner chosen); rebuilt incrementally.
    stack: Vec<(usize, usize)>,
    partner: Vec<usize>,
    started: bool,
    done: bool,
}

impl DiagramIter {
    fn new(n: usize) -> Self {
        Self {
            n,
            stack: Vec::with_capacity(n),
            partner: vec![usize::MAX; 2 * n],
            started: false,
            done: n == 0,
        }
    }

    fn first_free(&self) -> Option<usize> {
        self.partner.iter().position(|&p| p == usize::MAX)
    }

    /// Extend the partial matching greedily with smallest choices.
    fn descend(&mut self) -> bool {
        while let Some(d) = self.first_free() {
            let mate = (d + 1..2 * self.n).find(|&m| self.partner[m] == usize::MAX);
            match mate {
                Some(m) => {
                    self.partner[d] = m;
                    self.partner[m] = d;
                    self.stack.push((d, m));
                }
                None => return false,
            }
        }
        true
    }

    /// Backtrack to the next unexplored branch, then descend.
    fn advance(&mut self) -> bool {
        loop {
            let Some((d, m)) = self.stack.pop() else {
                return false;
            };
            self.partner[d] = usize::MAX;
            self.partner[m] = usize::MAX;
            if let Some(m2) = (m + 1..2 * self.n).find(|&x| self.partner[x] == usize::MAX) {
                self.partner[d] = m2;
                self.partner[m2] = d;
                self.stack.push((d, m2));
                if self.descend() {
                    return true;
                }
                // dead end below; keep backtracking
            }
        }
    }
}

impl Iterator for DiagramIter {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.descend()
        } else {
            self.advance()
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(Diagram {
            n: self.n,
            partner: self.partner.clone(),
        })
    }
}

/// All diagrams on `n` strands ((2n-1)!! of them), bounded by
/// [`ENUMERATION_BOUND`].
pub fn enumerate_diagrams(n: usize) -> Result<DiagramIter> {
    enumerate_diagrams_bounded(n, ENUMERATION_BOUND)
}

pub fn enumerate_diagrams_bounded(n: usize, bound: usize) -> Result<DiagramIter> {
    if n > bound {
        return Err(Error::BoundExceeded { requested: n, bound });
    }
    Ok(DiagramIter::new(n))
}

/// (2n-1)!!, the number of diagrams on n strands.
pub fn double_factorial_rank(n: usize) -> u64 {
    (0..n).map(|k| 2 * k as u64 + 1).product()
}

/// A formal ℤ[δ^{±1}]-linear combination of diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    n: usize,
    coeffs: BTreeMap<Diagram, LaurentPoly>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        let mut out = Self::zero(m.n_strands());
        out.add_assign_term(m.diagram.clone(), LaurentPoly::delta_power(m.delta_exp));
        out
    }

    pub fn from_diagram(d: Diagram) -> Self {
        let n = d.n_strands();
        let mut out = Self::zero(n);
        out.add_assign_term(d, LaurentPoly::one());
        out
    }

    pub fn n_strands(&self) -> usize {
        self.n
    }

    pub fn add_assign_term(&mut self, d: Diagram, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(d).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            let key = self
                .coeffs
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.coeffs.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.n != other.n {
            return Err(Error::StrandMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_assign_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (d, v) in &self.coeffs {
            out.add_assign_term(d.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&LaurentPoly::from_int(-1))
    }

    /// Bilinear extension of the concatenation product.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.n != other.n {
            return Err(Error::StrandMismatch { left: self.n, right: other.n });
        }
        let mut out = AlgebraElement::zero(self.n);
        for (da, ca) in &self.coeffs {
            for (db, cb) in &other.coeffs {
                let (d, loops) = da.concatenate(db)?;
                let c = (ca * cb).shift(loops as i64);
                out.add_assign_term(d, c);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &LaurentPoly)> {
        self.coeffs.iter()
    }
}

/// Minimal number of crossing generators needed to reach each diagram,
/// computed by 0/1 breadth-first search over left multiplication by
/// generators. Independent oracle for [`Diagram::height`].
pub fn height_by_word_search(n: usize) -> HashMap<Diagram, usize> {
    let mut gens: Vec<(Diagram, usize)> = Vec::new();
    for i in 1..n {
        gens.push((Diagram::generator_r(n, i).unwrap(), 1));
        gens.push((Diagram::generator_e(n, i).unwrap(), 0));
    }
    let mut dist: HashMap<Diagram, usize> = HashMap::new();
    let mut queue: VecDeque<Diagram> = VecDeque::new();
    dist.insert(Diagram::identity(n), 0);
    queue.push_back(Diagram::identity(n));
    while let Some(d) = queue.pop_front() {
        let base = dist[&d];
        for (g, cost) in &gens {
            let (nd, _) = d.concatenate(g).unwrap();
            let cand = base + cost;
            match dist.get(&nd) {
                Some(&old) if old <= cand => {}
                _ => {
                    dist.insert(nd.clone(), cand);
                    if *cost == 0 {
                        queue.push_front(nd);
                    } else {
                        queue.push_back(nd);
                    }
                }
            }
        }
    }
    dist
}
