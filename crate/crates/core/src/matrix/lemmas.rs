use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{plane_rotation, rotation, rotation_inverse, LemmaReport, Letter, NcPoly, SymMatrix};
use crate::algebra::{polynomial_extension, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::homotopy::endpoint_map;
use crate::poly::{Field, Polynomial};

const MAX_BLOCKS: usize = 5;
const MAX_BLOCK_SIZE: usize = 3;

pub fn rotation_matrix_checks() -> LemmaReport {
    let mut rep = LemmaReport::new("rotation matrix");
    let (r, ri) = (rotation(), rotation_inverse());
    let det = r.get(0, 0).mul(r.get(1, 1)).sub(&r.get(0, 1).mul(r.get(1, 0)));
    rep.check_poly("det R = 1", &det, &NcPoly::one());
    rep.check("R(0) = I", &r.eval_x(0), &SymMatrix::identity(2));
    let antidiag = SymMatrix::from_rows(vec![
        vec![NcPoly::zero(), NcPoly::constant(-1)],
        vec![NcPoly::one(), NcPoly::zero()],
    ])
    .expect("square");
    rep.check("R(1) = [[0,-1],[1,0]]", &r.eval_x(1), &antidiag);
    rep.check("R R^-1 = I", &r.mul(&ri), &SymMatrix::identity(2));
    rep.check("R^-1 R = I", &ri.mul(&r), &SymMatrix::identity(2));
    rep
}

fn conj(m: &SymMatrix) -> SymMatrix {
    rotation_inverse().mul(m).mul(&rotation())
}

fn sym_rows(names: [[&str; 2]; 2]) -> SymMatrix {
    SymMatrix::from_rows(names.iter().map(|r| r.iter().map(|s| sym_or_zero(s)).collect()).collect()).expect("square")
}

fn sym_or_zero(s: &str) -> NcPoly {
    match s {
        "0" => NcPoly::zero(),
        _ if s.starts_with('-') => NcPoly::sym(&s[1..]).neg(),
        _ => NcPoly::sym(s),
    }
}

/// `M ↦ ℛ⁻¹Mℛ` is a homotopy from the identity to
/// `[[a,b],[c,d]] ↦ [[d,−c],[−b,a]]`.
pub fn conjugation_homotopy_check() -> LemmaReport {
    let mut rep = LemmaReport::new("conjugation homotopy");
    let m = sym_rows([["a", "b"], ["c", "d"]]);
    let n = sym_rows([["e", "f"], ["g", "h"]]);
    let h = conj(&m);
    rep.check("x = 0 endpoint", &h.eval_x(0), &m);
    rep.check("x = 1 endpoint", &h.eval_x(1), &sym_rows([["d", "-c"], ["-b", "a"]]));
    rep.check("multiplicative", &h.mul(&conj(&n)), &conj(&m.mul(&n)));
    rep.check("additive", &h.add(&conj(&n)), &conj(&m.add(&n)));
    rep.check_poly("trace preserved", &h.get(0, 0).add(h.get(1, 1)), &NcPoly::sym("a").add(&NcPoly::sym("d")));
    rep
}

/// The swap homotopy on `diag(α, β)`, its degenerate case and the corner
/// conjugation chain `diag(α, 0) ≈ diag(0, cαc⁻¹) ≈ diag(cαc⁻¹, 0)`.
pub fn block_lemma_checks() -> LemmaReport {
    let mut rep = LemmaReport::new("block lemmas");
    let (a1, a2, b1, b2) = (NcPoly::sym("a1"), NcPoly::sym("a2"), NcPoly::sym("b1"), NcPoly::sym("b2"));
    let z = NcPoly::zero();
    let d = |p: &NcPoly, q: &NcPoly| SymMatrix::from_rows(vec![vec![p.clone(), z.clone()], vec![z.clone(), q.clone()]]).expect("square");

    let swap = |p: &NcPoly, q: &NcPoly| conj(&d(p, q));
    rep.check("swap at x = 0", &swap(&a1, &b1).eval_x(0), &d(&a1, &b1));
    rep.check("swap at x = 1", &swap(&a1, &b1).eval_x(1), &d(&b1, &a1));
    rep.check("swap multiplicative", &swap(&a1, &b1).mul(&swap(&a2, &b2)), &swap(&a1.mul(&a2), &b1.mul(&b2)));
    rep.check("swap with equal blocks is constant", &swap(&a1, &a1), &d(&a1, &a1));

    let c = Letter::new("c");
    let (cp, ci) = (NcPoly::letter(c.clone()), NcPoly::letter(c.inv()));
    let cm = d(&NcPoly::one(), &cp);
    let cmi = d(&NcPoly::one(), &ci);
    rep.check("C C^-1 = I", &cm.mul(&cmi), &SymMatrix::identity(2));
    rep.check("C^-1 C = I", &cmi.mul(&cm), &SymMatrix::identity(2));
    let beta = |p: &NcPoly| cp.mul(p).mul(&ci);
    rep.check("C diag(a,0) C^-1 = diag(a,0)", &cm.mul(&d(&a1, &z)).mul(&cmi), &d(&a1, &z));
    rep.check("C diag(0,a) C^-1 = diag(0,cac^-1)", &cm.mul(&d(&z, &a1)).mul(&cmi), &d(&z, &beta(&a1)));
    rep.check_poly("conjugate is multiplicative", &beta(&a1).mul(&beta(&a2)), &beta(&a1.mul(&a2)));

    // first link: the swap conjugated by C
    let link1 = |p: &NcPoly| cm.mul(&swap(p, &z)).mul(&cmi);
    rep.check("corner link 1 at x = 0", &link1(&a1).eval_x(0), &d(&a1, &z));
    rep.check("corner link 1 at x = 1", &link1(&a1).eval_x(1), &d(&z, &beta(&a1)));
    rep.check("corner link 1 multiplicative", &link1(&a1).mul(&link1(&a2)), &link1(&a1.mul(&a2)));
    // second link: swap of diag(0, β)
    let link2 = |p: &NcPoly| swap(&z, &beta(p));
    rep.check("corner link 2 at x = 0", &link2(&a1).eval_x(0), &link1(&a1).eval_x(1));
    rep.check("corner link 2 at x = 1", &link2(&a1).eval_x(1), &d(&beta(&a1), &z));
    rep.check("corner link 2 multiplicative", &link2(&a1).mul(&link2(&a2)), &link2(&a1.mul(&a2)));
    rep
}

/// Images of two sample elements `a`, `a'` under a block morphism.
#[derive(Clone, Debug)]
struct Block {
    first: SymMatrix,
    second: SymMatrix,
}

impl Block {
    fn generic(i: usize, size: usize) -> Block {
        let lower = (b'a' + i as u8) as char;
        Block {
            first: SymMatrix::generic(&lower.to_string(), size),
            second: SymMatrix::generic(&lower.to_ascii_uppercase().to_string(), size),
        }
    }

    fn zero(size: usize) -> Block {
        Block { first: SymMatrix::zero(size), second: SymMatrix::zero(size) }
    }

    fn size(&self) -> usize {
        self.first.size()
    }

    /// 0: image of `a`, 1: of `a'`, 2: of `aa'`.
    fn sample(&self, which: usize) -> SymMatrix {
        match which {
            0 => self.first.clone(),
            1 => self.second.clone(),
            _ => self.first.mul(&self.second),
        }
    }
}

fn arrangement(blocks: &[Block], order: &[usize], which: usize, total: usize) -> SymMatrix {
    let parts: Vec<SymMatrix> = order.iter().map(|&b| blocks[b].sample(which)).collect();
    let refs: Vec<&SymMatrix> = parts.iter().collect();
    SymMatrix::diag(&refs).pad(total)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PermutationLink {
    /// Arrangement position of the left block of the transposition.
    pub position: usize,
    /// Block indices exchanged.
    pub blocks: (usize, usize),
    /// Number of `ℛ ⊗ I` factors in the conjugating matrix.
    pub rotations: usize,
    pub x_degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct PermutationChain {
    pub sigma: Vec<usize>,
    pub sizes: Vec<usize>,
    pub padded_size: usize,
    pub links: Vec<PermutationLink>,
    pub report: LemmaReport,
}

/// Coordinate planes moving each block of a transposition. Unequal blocks
/// travel through the zero padding `[k, 2k)`.
fn transposition_planes(s: usize, p: usize, q: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let r = |a: usize, n: usize| (a..a + n).collect::<Vec<_>>();
    if p == q {
        return vec![(r(s, p), r(s + p, p))];
    }
    vec![
        (r(s, p), r(k, p)),
        (r(s + p, q), r(k + p, q)),
        (r(k + p, q), r(s, q)),
        (r(k, p), r(s + q, p)),
    ]
}

fn chain_for(blocks: &[Block], sigma: &[usize], name: &str) -> (Vec<PermutationLink>, LemmaReport) {
    let k: usize = blocks.iter().map(Block::size).sum();
    let total = 2 * k;
    let mut rep = LemmaReport::new(name);
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    let mut current = arrangement(blocks, &order, 0, total);
    let mut links = Vec::new();
    let mut transpositions = Vec::new();
    let mut scratch = order.clone();
    for (i, &want) in sigma.iter().enumerate() {
        let mut j = scratch.iter().position(|&b| b == want).expect("permutation");
        while j > i {
            scratch.swap(j - 1, j);
            transpositions.push(j - 1);
            j -= 1;
        }
    }
    for (n, &pos) in transpositions.iter().enumerate() {
        let s: usize = order[..pos].iter().map(|&b| blocks[b].size()).sum();
        let (p, q) = (blocks[order[pos]].size(), blocks[order[pos + 1]].size());
        let planes = transposition_planes(s, p, q, k);
        let mut u = SymMatrix::identity(total);
        let mut ui = SymMatrix::identity(total);
        for (a, b) in &planes {
            u = u.mul(&plane_rotation(total, a, b, false));
            ui = plane_rotation(total, a, b, true).mul(&ui);
        }
        let before = order.clone();
        let h = |which: usize| ui.mul(&arrangement(blocks, &before, which, total)).mul(&u);
        let tag = format!("link {}", n + 1);
        rep.check(format!("{tag}: U U^-1 = I"), &u.mul(&ui), &SymMatrix::identity(total));
        let h0 = h(0);
        rep.check(format!("{tag}: starts where the chain stands"), &h0.eval_x(0), &current);
        order.swap(pos, pos + 1);
        current = arrangement(blocks, &order, 0, total);
        rep.check(format!("{tag}: ends at the transposed blocks"), &h0.eval_x(1), &current);
        rep.check(format!("{tag}: multiplicative"), &h0.mul(&h(1)), &h(2));
        links.push(PermutationLink {
            position: pos,
            blocks: (before[pos], before[pos + 1]),
            rotations: planes.len(),
            x_degree: h0.x_degree(),
        });
    }
    rep.check("chain ends at the permuted blocks", &current, &arrangement(blocks, sigma, 0, total));
    (links, rep)
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &v in sigma {
        if v >= sigma.len() || seen[v] {
            return Err(Error::invalid(format!("{sigma:?} is not a permutation of 0..{}", sigma.len())));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Chain of conjugation homotopies from `diag(α₁,…,αₙ,0)` to
/// `diag(α_{σ(1)},…,α_{σ(n)},0)` in size `2k`; `sigma[i]` is the block
/// placed at position `i` (0-based).
pub fn permutation_homotopy(sigma: &[usize], sizes: &[usize]) -> Result<PermutationChain> {
    if sigma.len() != sizes.len() {
        return Err(Error::invalid("one size per block is required"));
    }
    if sigma.len() > MAX_BLOCKS {
        return Err(Error::ResourceLimit { what: "permutation blocks", limit: MAX_BLOCKS as u64 });
    }
    if sizes.iter().any(|&s| s > MAX_BLOCK_SIZE) {
        return Err(Error::ResourceLimit { what: "permutation block size", limit: MAX_BLOCK_SIZE as u64 });
    }
    if sizes.contains(&0) {
        return Err(Error::invalid("block sizes must be positive"));
    }
    check_permutation(sigma)?;
    let blocks: Vec<Block> = sizes.iter().enumerate().map(|(i, &s)| Block::generic(i, s)).collect();
    let (links, report) = chain_for(&blocks, sigma, "permutation homotopy");
    Ok(PermutationChain {
        sigma: sigma.to_vec(),
        sizes: sizes.to_vec(),
        padded_size: 2 * sizes.iter().sum::<usize>(),
        links,
        report,
    })
}

fn gamma(m: &SymMatrix, n: &SymMatrix) -> SymMatrix {
    SymMatrix::diag(&[m, n])
}

/// Block multiplicativity of `Γ_{m,n}`, the structural maps
/// `M ↦ diag(M, 0)`, and the permutation certificates relating
/// `Γ_{m,n}` to `Γ_{n,m}∘swap` and to the structural maps.
pub fn gamma_and_stability_checks() -> LemmaReport {
    let mut rep = LemmaReport::new("gamma and stability");
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let (a, b) = (SymMatrix::generic("m", m), SymMatrix::generic("n", n));
        let (a2, b2) = (SymMatrix::generic("p", m), SymMatrix::generic("q", n));
        rep.check(
            format!("Gamma_{m},{n} multiplicative"),
            &gamma(&a, &b).mul(&gamma(&a2, &b2)),
            &gamma(&a.mul(&a2), &b.mul(&b2)),
        );
        rep.check(
            format!("Gamma_{m},{n} additive"),
            &gamma(&a, &b).add(&gamma(&a2, &b2)),
            &gamma(&a.add(&a2), &b.add(&b2)),
        );
    }
    for m in 1..=3 {
        let (a, a2) = (SymMatrix::generic("m", m), SymMatrix::generic("p", m));
        rep.check(format!("structural map {m} -> {} multiplicative", m + 1), &a.pad(m + 1).mul(&a2.pad(m + 1)), &a.mul(&a2).pad(m + 1));
    }
    for (m, n) in [(1, 1), (1, 2)] {
        let blocks = vec![Block::generic(0, m), Block::generic(1, n)];
        let (_, sub) = chain_for(&blocks, &[1, 0], &format!("Gamma_{m},{n} vs Gamma_{n},{m} after swap"));
        rep.absorb(sub);
        let k = 2 * (m + n);
        let start = gamma(&blocks[0].first, &blocks[1].first).pad(k);
        let end = gamma(&blocks[1].first, &blocks[0].first).pad(k);
        rep.check(format!("swap chain runs from Gamma_{m},{n}"), &start, &arrangement(&blocks, &[0, 1], 0, k));
        rep.check(format!("swap chain runs to Gamma_{n},{m}"), &end, &arrangement(&blocks, &[1, 0], 0, k));
    }
    // structural maps against Γ: diag(M, N, 0, 0) ≈ diag(M, 0, N, 0)
    for (m, n) in [(1, 1), (2, 1)] {
        let blocks = vec![Block::generic(0, m), Block::generic(1, n), Block::zero(1), Block::zero(1)];
        let (_, sub) = chain_for(&blocks, &[0, 2, 1, 3], &format!("structural maps and Gamma_{m},{n}"));
        rep.absorb(sub);
        let k = 2 * (m + n + 2);
        let (a, b) = (&blocks[0].first, &blocks[1].first);
        rep.check(
            format!("chain starts at the stabilized Gamma_{m},{n}"),
            &gamma(a, b).pad(m + n + 2).pad(k),
            &arrangement(&blocks, &[0, 1, 2, 3], 0, k),
        );
        rep.check(
            format!("chain ends at Gamma_{},{} of the stabilized blocks", m + 1, n + 1),
            &gamma(&a.pad(m + 1), &b.pad(n + 1)).pad(k),
            &arrangement(&blocks, &[0, 2, 1, 3], 0, k),
        );
    }
    rep
}

/// `a ↦ [[a, a·x], [0, 0]]` on words in `a`, `b`: multiplicative,
/// additive, and nonconstant in `x` on nonzero input.
pub fn pnc_zero_witness() -> LemmaReport {
    let mut rep = LemmaReport::new("nonconstant witness");
    let z = NcPoly::zero();
    let w = |p: &NcPoly| {
        SymMatrix::from_rows(vec![vec![p.clone(), p.mul(&NcPoly::x())], vec![z.clone(), z.clone()]]).expect("square")
    };
    let (a, b) = (NcPoly::sym("a"), NcPoly::sym("b"));
    rep.check("image of ab", &w(&a).mul(&w(&b)), &w(&a.mul(&b)));
    rep.check("image of ba", &w(&b).mul(&w(&a)), &w(&b.mul(&a)));
    rep.check("image of a + b", &w(&a).add(&w(&b)), &w(&a.add(&b)));
    rep.check("x = 0 gives the structural map", &w(&a).eval_x(0), &SymMatrix::diag(&[&SymMatrix::from_rows(vec![vec![a.clone()]]).expect("square")]).pad(2));
    let xcoef = w(&a).map(|p| p.x_coefficient(1));
    rep.flag("x-coefficient of the image of a is nonzero", !xcoef.is_zero(), xcoef.to_string());
    rep.flag("image of a is nonconstant", w(&a).x_degree() == 1, format!("degree {}", w(&a).x_degree()));
    rep
}

/// The swap certificate instantiated over the commutative algebra `ℚ[u]`
/// with `α(t) = u`, `β(t) = u²`: entrywise endpoint maps of `ℚ[u][x]` and
/// multiplicativity on `t·t`.
pub fn commutative_spot_check() -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("swap certificate over Q[u]");
    let b = AlgebraPresentation::parse(Field::Rational, &["u"], &[])?;
    let ext = polynomial_extension(&b)?;
    let bx = &ext.alg;
    let u = ext.embed.apply(&b.var(0))?;
    let image = |l: &Letter| -> Result<Polynomial> {
        match l.name.as_str() {
            "a1" => Ok(u.clone()),
            "b1" => Ok(u.mul(&u)),
            other => Err(Error::invalid(format!("no image for letter {other}"))),
        }
    };
    let flatten = |m: &SymMatrix| -> Result<Vec<Polynomial>> {
        let mut out = Vec::with_capacity(4);
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = bx.zero();
                for (w, k, coeff) in m.get(r, c).terms() {
                    let mut t = Polynomial::constant(bx.ring(), coeff.clone()).mul(&bx.var(ext.x).pow(k));
                    for l in w {
                        t = t.mul(&image(l)?);
                    }
                    acc = acc.add(&t);
                }
                out.push(bx.nf(&acc)?);
            }
        }
        Ok(out)
    };
    let (a1, b1) = (NcPoly::sym("a1"), NcPoly::sym("b1"));
    let z = NcPoly::zero();
    let d = |p: &NcPoly, q: &NcPoly| SymMatrix::from_rows(vec![vec![p.clone(), z.clone()], vec![z.clone(), q.clone()]]).expect("square");
    let h = flatten(&conj(&d(&a1, &b1)))?;
    let h_sq = flatten(&conj(&d(&a1.mul(&a1), &b1.mul(&b1))))?;
    let prod: Vec<Polynomial> = (0..2)
        .flat_map(|r| (0..2).map(move |c| (r, c)))
        .map(|(r, c)| h[2 * r].mul(&h[c]).add(&h[2 * r + 1].mul(&h[2 + c])))
        .collect();
    let mut mult_ok = true;
    for (p, q) in prod.iter().zip(&h_sq) {
        mult_ok &= bx.equal(p, q)?;
    }
    rep.flag("H(t) H(t) = H(t^2) in M_2(Q[u][x])", mult_ok, "entrywise mismatch");
    let u2 = b.var(0).mul(&b.var(0));
    let expect = [
        (0, vec![b.var(0), b.zero(), b.zero(), u2.clone()]),
        (1, vec![u2, b.zero(), b.zero(), b.var(0)]),
    ];
    for (c, want) in expect {
        let ev = endpoint_map(bx, &b, c)?;
        let got: Vec<Polynomial> = h.iter().map(|p| ev.apply(p)).collect::<Result<_>>()?;
        let ok = got.iter().zip(&want).all(|(g, w)| g == w);
        let shown: Vec<String> = got.iter().map(|p| p.to_string()).collect();
        rep.flag(format!("endpoint x = {c}"), ok, shown.join(", "));
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaGroup {
    Rotation,
    Blocks,
    Permutation,
    Gamma,
}

impl FromStr for LemmaGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmaGroup> {
        match s {
            "rotation" => Ok(LemmaGroup::Rotation),
            "blocks" => Ok(LemmaGroup::Blocks),
            "permutation" => Ok(LemmaGroup::Permutation),
            "gamma" => Ok(LemmaGroup::Gamma),
            _ => Err(Error::invalid(format!("unknown lemma group '{s}' (rotation, blocks, permutation, gamma)"))),
        }
    }
}

impl fmt::Display for LemmaGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaGroup::Rotation => "rotation",
            LemmaGroup::Blocks => "blocks",
            LemmaGroup::Permutation => "permutation",
            LemmaGroup::Gamma => "gamma",
        })
    }
}

/// Every report of the selected group, or of all groups plus the
/// nonconstant witness.
pub fn lemma_suite(only: Option<LemmaGroup>) -> Result<Vec<LemmaReport>> {
    let wants = |g: LemmaGroup| only.is_none_or(|o| o == g);
    let mut out = Vec::new();
    if wants(LemmaGroup::Rotation) {
        out.push(rotation_matrix_checks());
        out.push(conjugation_homotopy_check());
        out.push(commutative_spot_check()?);
    }
    if wants(LemmaGroup::Blocks) {
        out.push(block_lemma_checks());
    }
    if wants(LemmaGroup::Permutation) {
        for (sigma, sizes) in [(vec![0, 1], vec![1, 1]), (vec![1, 0], vec![1, 1]), (vec![1, 2, 0], vec![1, 1, 1]), (vec![2, 0, 1], vec![1, 2, 1])] {
            let mut chain = permutation_homotopy(&sigma, &sizes)?;
            chain.report.lemma = format!("permutation {sigma:?} on sizes {sizes:?}");
            out.push(chain.report);
        }
    }
    if wants(LemmaGroup::Gamma) {
        out.push(gamma_and_stability_checks());
    }
    if only.is_none() {
        out.push(pnc_zero_witness());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_and_conjugation() {
        let r = rotation_matrix_checks();
        assert!(r.passed(), "{r:?}");
        let c = conjugation_homotopy_check();
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn blocks() {
        let r = block_lemma_checks();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checks.len(), 15);
    }

    #[test]
    fn permutations() {
        let id = permutation_homotopy(&[0, 1, 2], &[1, 2, 1]).unwrap();
        assert!(id.links.is_empty() && id.report.passed());
        let t = permutation_homotopy(&[1, 0], &[1, 1]).unwrap();
        assert_eq!(t.links.len(), 1);
        assert_eq!(t.links[0].rotations, 1);
        assert!(t.report.passed());
        let cyc = permutation_homotopy(&[1, 2, 0], &[1, 1, 1]).unwrap();
        assert_eq!(cyc.links.len(), 2);
        assert!(cyc.report.passed(), "{:?}", cyc.report);
        let uneven = permutation_homotopy(&[1, 0], &[2, 1]).unwrap();
        assert_eq!(uneven.links[0].rotations, 4);
        assert!(uneven.report.passed(), "{:?}", uneven.report);
        assert!(matches!(permutation_homotopy(&[0; 6], &[1; 6]), Err(Error::ResourceLimit { .. })));
        assert!(matches!(permutation_homotopy(&[0], &[4]), Err(Error::ResourceLimit { .. })));
        assert!(permutation_homotopy(&[0, 0], &[1, 1]).is_err());
    }

    #[test]
    fn gamma_checks() {
        let r = gamma_and_stability_checks();
        assert!(r.passed(), "{:?}", r.checks.iter().find(|c| !c.passed));
    }

    #[test]
    fn witness_and_spot_check() {
        assert!(pnc_zero_witness().passed());
        let r = commutative_spot_check().unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn failures_are_reported() {
        let mut r = LemmaReport::new("demo");
        assert!(!r.check("identity is rotation", &SymMatrix::identity(2), &rotation()));
        assert_eq!(r.checks[0].residual, "entry (1,1): x^2");
        assert!(matches!(r.into_result(), Err(Error::PropertyViolation { .. })));
    }

    #[test]
    fn suite_groups() {
        assert_eq!(lemma_suite(Some(LemmaGroup::Blocks)).unwrap().len(), 1);
        assert!(lemma_suite(None).unwrap().iter().all(LemmaReport::passed));
        assert!("ranks".parse::<LemmaGroup>().is_err());
    }
}
