//! Structural decompositions spanning both algebras: the U·V·W factorization
//! of diagram monomials through a height-zero reference set, the groups K_B of
//! height-zero diagrams with fixed horizontal part, the cell datum and its
//! filtration property, and parabolic/Temperley–Lieb subalgebra ranks.

use std::collections::{HashMap, HashSet};

use crate::diagram::{Diagram, Monomial};
use crate::roots::{
    adjacent_set, bottom_set, canonical_diagram, e_hat, height_set, top_set, AdmissibleSetA,
};
use crate::typec::{
    b_word, diagram_closure, e_strip_word, eval_c, stabilizer_and_cosets, NormalForm,
    NormalFormBasis, RelationCheck, TokenC, WeylElement, WeylGroup,
};
use crate::{Error, Result};

/// a = δ^{−k} · U · V · W through the reference set B: U carries top(a) to B,
/// V is a height-zero element with horizontal part B on both sides, and W
/// carries B to bottom(a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UvwDecomposition {
    pub k: i64,
    pub u: Diagram,
    pub v: Diagram,
    pub w: Diagram,
    pub b: AdmissibleSetA,
}

impl UvwDecomposition {
    /// U·V·W as a monomial; equals δ^k · a for the decomposed a.
    pub fn recompose(&self) -> Result<Monomial> {
        Monomial::from_diagram(self.u.clone())
            .multiply(&Monomial::from_diagram(self.v.clone()))?
            .multiply(&Monomial::from_diagram(self.w.clone()))
    }
}

/// Factor a through the reference set B (default: the left-adjacent set with
/// |top(a)| strands): U = a_{top(a),B}, W = op(a_{bottom(a),B}), and
/// V = op(U)·a·op(W) up to the recorded δ-power.
pub fn decompose(a: &Monomial, b: Option<AdmissibleSetA>) -> Result<UvwDecomposition> {
    let n = a.n_strands();
    let top = top_set(a);
    let bottom = bottom_set(a);
    let b = match b {
        Some(b) => b,
        None => adjacent_set(top.len()),
    };
    if b.len() != top.len() {
        return Err(Error::SizeMismatch(format!(
            "reference set has {} strands, top of a has {}",
            b.len(),
            top.len()
        )));
    }
    if height_set(n, &b)? != 0 {
        return Err(Error::NonzeroHeight);
    }
    let u = canonical_diagram(n, &top, &b)?;
    let w_raw = canonical_diagram(n, &bottom, &b)?;
    let w = Monomial::from_diagram(w_raw.clone()).op().diagram;
    let vm = Monomial::from_diagram(u.clone())
        .op()
        .multiply(a)?
        .multiply(&Monomial::from_diagram(w_raw))?;
    let v = vm.diagram;
    let out = UvwDecomposition { k: 0, u, v, w, b };
    let rec = out.recompose()?;
    if rec.diagram != a.diagram {
        return Err(Error::InvalidDiagram(
            "recomposition does not reproduce the input diagram".into(),
        ));
    }
    Ok(UvwDecomposition { k: rec.delta_exp - a.delta_exp, ..out })
}

/// The group K_B of height-zero diagrams with horizontal part B on both rows:
/// a symmetric group on the free strands, with unit Ê_B = δ^{−|B|}E_B.
/// Elements carry the δ^{−|B|} normalization so multiplication is closed.
pub struct KGroup {
    pub b: AdmissibleSetA,
    pub unit: Monomial,
    pub generators: Vec<Monomial>,
    pub elements: Vec<Monomial>,
}

impl KGroup {
    /// Rank r of the Coxeter system: strand count − 1 − 2|B| (−1 when the
    /// horizontal part covers every strand and the group is trivial).
    pub fn coxeter_rank(&self) -> i64 {
        self.unit.n_strands() as i64 - 1 - 2 * self.b.len() as i64
    }

    /// Elements whose diagrams are fixed by the mirror symmetry.
    pub fn sigma_fixed_order(&self) -> usize {
        self.elements
            .iter()
            .filter(|m| m.diagram.is_symmetric())
            .count()
    }
}

pub fn k_group(n: usize, b: &AdmissibleSetA) -> Result<KGroup> {
    if height_set(n, b)? != 0 {
        return Err(Error::NonzeroHeight);
    }
    let shift = -(b.len() as i64);
    let occupied: HashSet<usize> = b.pairs().iter().flat_map(|&(x, y)| [x, y]).collect();
    let free: Vec<usize> = (1..=n).filter(|d| !occupied.contains(d)).collect();
    let base_pairs: Vec<(usize, usize)> = b
        .pairs()
        .iter()
        .flat_map(|&(x, y)| [(x, y), (n + x, n + y)])
        .collect();
    let make = |perm: &dyn Fn(usize) -> usize| -> Result<Monomial> {
        let mut pairs = base_pairs.clone();
        for (s, &f) in free.iter().enumerate() {
            pairs.push((f, n + free[perm(s)]));
        }
        Ok(Monomial::new(shift, Diagram::from_pairs(n, &pairs)?))
    };
    let unit = make(&|s| s)?;
    debug_assert_eq!(unit, e_hat(n, b)?);
    let mut generators = Vec::new();
    for t in 0..free.len().saturating_sub(1) {
        generators.push(make(&move |s| {
            if s == t {
                t + 1
            } else if s == t + 1 {
                t
            } else {
                s
            }
        })?);
    }
    let mut elements = vec![unit.clone()];
    let mut seen: HashSet<Diagram> = elements.iter().map(|m| m.diagram.clone()).collect();
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        for g in &generators {
            let next = cur.multiply(g)?;
            debug_assert_eq!(next.delta_exp, shift);
            if seen.insert(next.diagram.clone()) {
                elements.push(next);
            }
        }
        head += 1;
    }
    Ok(KGroup { b: b.clone(), unit, generators, elements })
}

/// One index of the cell datum at layer i: a coset representative u, the
/// strip index p, and a group element s of L_i.
#[derive(Debug, Clone)]
pub struct CellTriple {
    pub u: WeylElement,
    pub p: usize,
    pub s: WeylElement,
}

pub struct CellLayer {
    pub i: usize,
    pub triples: Vec<CellTriple>,
}

/// The cell datum: layers indexed by i = 0..n with the order B_i > B_j iff
/// i < j, index triples T(B_i), the bilinear map C, and op as the involution.
/// The group-element basis of the layer group L_i is used for the inner
/// factor, so C is surjective onto the normal-form basis but not injective.
pub struct CellDatum {
    n: usize,
    pub layers: Vec<CellLayer>,
    cores: Vec<Monomial>,
    strips: HashMap<(usize, usize), Monomial>,
}

pub const CELL_BOUND: usize = 3;

impl CellDatum {
    pub fn rank(&self) -> usize {
        self.n
    }

    /// C((u, e_{i,p}, s), (w, e_{i,p′}, t)) =
    /// u · e_{i,p} · b_i · s · t^op · e_{i,p′} · w^op.
    pub fn c(&self, i: usize, x: &CellTriple, y: &CellTriple) -> Result<Monomial> {
        x.u.monomial
            .multiply(&self.strips[&(i, x.p)])?
            .multiply(&self.cores[i])?
            .multiply(&x.s.monomial)?
            .multiply(&y.s.monomial.op())?
            .multiply(&self.strips[&(i, y.p)])?
            .multiply(&y.u.monomial.op())
    }
}

pub fn build_cell_datum(w: &WeylGroup) -> Result<CellDatum> {
    let n = w.rank();
    if n > CELL_BOUND {
        return Err(Error::BoundExceeded { requested: n, bound: CELL_BOUND });
    }
    let mut layers = Vec::new();
    let mut cores = Vec::new();
    let mut strips = HashMap::new();
    for i in 0..=n {
        cores.push(eval_c(&b_word(i), n)?);
        let l_elements = stabilizer_and_cosets(w, i, i)?.l_elements;
        let mut triples = Vec::new();
        for p in (i % 2..=i).step_by(2) {
            strips.insert((i, p), eval_c(&e_strip_word(i, p, n)?, n)?);
            let data = stabilizer_and_cosets(w, i, p)?;
            for u in &data.d_reps {
                for s in &l_elements {
                    triples.push(CellTriple { u: u.clone(), p, s: s.clone() });
                }
            }
        }
        layers.push(CellLayer { i, triples });
    }
    Ok(CellDatum { n, layers, cores, strips })
}

/// Result of the filtration sweep: one named pass/fail per generator and
/// condition.
pub struct FiltrationReport {
    pub checks: Vec<RelationCheck>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// For every generator g and basis element δ^k·u·b_{p,i,p′}·v·w^op, expand
/// g times the element in the basis and verify:
/// 1. the resulting layer h satisfies h ≥ i (the partial order is respected);
/// 2. when h = i, the right-hand data (p′, w) is unchanged;
/// 3. when h = i, the new left-hand data and δ-coefficient depend only on the
///    old left-hand data (i, p, u, v), never on (p′, w); products that drop
///    to a deeper layer must drop for every (p′, w) alike.
pub fn filtration_report(n: usize, entries: &[(NormalForm, Monomial)]) -> Result<FiltrationReport> {
    let index: HashMap<Diagram, usize> = entries
        .iter()
        .enumerate()
        .map(|(k, (_, m))| (m.diagram.clone(), k))
        .collect();
    let mut checks = Vec::new();
    for tok in (0..n)
        .map(TokenC::R)
        .chain((0..n).map(TokenC::E))
    {
        let g = eval_c(&[tok], n)?;
        let mut order_ok = true;
        let mut right_ok = true;
        let mut independent = true;
        // Outcome of left multiplication, keyed by the left-hand data.
        type LeftKey = (usize, usize, Vec<TokenC>, Vec<TokenC>);
        type Outcome = Option<(i64, usize, Vec<TokenC>, Vec<TokenC>)>;
        let mut outcomes: HashMap<LeftKey, Outcome> = HashMap::new();
        for (nf, m) in entries {
            let prod = g.multiply(m)?;
            let &target = index.get(&prod.diagram).ok_or(Error::BasisLookup)?;
            let (nf2, m2) = &entries[target];
            if nf2.i < nf.i {
                order_ok = false;
                continue;
            }
            let outcome: Outcome = if nf2.i == nf.i {
                if nf2.pp != nf.pp || nf2.w_word != nf.w_word {
                    right_ok = false;
                }
                Some((
                    prod.delta_exp - m2.delta_exp,
                    nf2.p,
                    nf2.u_word.clone(),
                    nf2.v_word.clone(),
                ))
            } else {
                None
            };
            let key = (nf.i, nf.p, nf.u_word.clone(), nf.v_word.clone());
            match outcomes.get(&key) {
                None => {
                    outcomes.insert(key, outcome);
                }
                Some(prev) => {
                    if *prev != outcome {
                        independent = false;
                    }
                }
            }
        }
        checks.push(RelationCheck {
            name: format!("left mult by {tok} respects the layer order"),
            passed: order_ok,
        });
        checks.push(RelationCheck {
            name: format!("left mult by {tok} fixes the right index at equal layer"),
            passed: right_ok,
        });
        checks.push(RelationCheck {
            name: format!("left mult by {tok} has coefficients independent of the right index"),
            passed: independent,
        });
    }
    Ok(FiltrationReport { checks })
}

pub fn check_filtration(basis: &NormalFormBasis) -> Result<FiltrationReport> {
    filtration_report(basis.rank(), basis.entries())
}

/// Number of distinct diagrams in the closure of {φ(r_j), φ(e_j)}_{j∈J}.
pub fn parabolic_rank(n: usize, j_set: &[usize]) -> Result<u64> {
    let mut gens = Vec::new();
    for &j in j_set {
        gens.push(eval_c(&[TokenC::R(j)], n)?.diagram);
        gens.push(eval_c(&[TokenC::E(j)], n)?.diagram);
    }
    Ok(diagram_closure(2 * n, &gens).len() as u64)
}

pub struct TlReport {
    pub closure_size: usize,
    pub symmetric_planar_size: usize,
}

/// Closure of the hook generators φ(e_0), …, φ(e_{n−1}); asserts it equals
/// the set of symmetric diagrams inside the planar (Temperley–Lieb) closure
/// of E_1, …, E_{2n−1}.
pub fn tl_subalgebra(n: usize) -> Result<TlReport> {
    if n > CELL_BOUND {
        return Err(Error::BoundExceeded { requested: n, bound: CELL_BOUND });
    }
    let hook_gens: Vec<Diagram> = (0..n)
        .map(|j| Ok(eval_c(&[TokenC::E(j)], n)?.diagram))
        .collect::<Result<_>>()?;
    let closure: HashSet<Diagram> = diagram_closure(2 * n, &hook_gens).into_iter().collect();
    let planar_gens: Vec<Diagram> = (1..2 * n)
        .map(|k| Diagram::generator_e(2 * n, k))
        .collect::<Result<_>>()?;
    let symmetric_planar: HashSet<Diagram> = diagram_closure(2 * n, &planar_gens)
        .into_iter()
        .filter(|d| d.is_symmetric())
        .collect();
    if closure != symmetric_planar {
        return Err(Error::SizeMismatch(format!(
            "hook closure ({}) differs from symmetric planar closure ({})",
            closure.len(),
            symmetric_planar.len()
        )));
    }
    Ok(TlReport {
        closure_size: closure.len(),
        symmetric_planar_size: symmetric_planar.len(),
    })
}
