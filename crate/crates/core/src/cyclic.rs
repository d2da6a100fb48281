//! Binary cyclic codes: construction, parity-check matrices and evaluation of
//! window combinations `(i, f)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::factor::{factorize, is_primitive, lcm_u64, poly_order};
use crate::gf2::{default_primitive, BinaryPolynomial, FieldContext, FieldElement};
use crate::matrix::{BinaryMatrix, SquareInverse};

/// Largest redundancy supported (syndromes are single words).
pub const MAX_REDUNDANCY: usize = 63;
/// Shared splitting fields are only resolved up to this degree.
const MAX_SPLITTING_DEGREE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Generic,
    Bch { e: usize, m: usize },
    Melas { m: usize },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::Bch { .. } => "bch",
            Family::Melas { .. } => "melas",
        }
    }
}

/// An irreducible factor of the generator with the field in which its root is evaluated.
#[derive(Debug, Clone)]
pub struct CodeFactor {
    pub poly: BinaryPolynomial,
    pub degree: usize,
    /// Signed exponent `t` with `alpha^t` a root, relative to the code's shared context.
    pub exponent: Option<i64>,
    pub primitive: bool,
    /// Field used for the parity-check block and `root`.
    field: Arc<FieldContext>,
    root: FieldElement,
}

impl CodeFactor {
    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn root(&self) -> FieldElement {
        self.root
    }

    pub fn order(&self) -> u64 {
        poly_order(&self.poly).expect("validated factor")
    }
}

#[derive(Debug, Clone)]
pub struct CyclicCode {
    n: usize,
    g: BinaryPolynomial,
    factors: Vec<CodeFactor>,
    ctx: Option<Arc<FieldContext>>,
    family: Family,
}

impl CyclicCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.g.deg()
    }

    pub fn generator(&self) -> &BinaryPolynomial {
        &self.g
    }

    pub fn factors(&self) -> &[CodeFactor] {
        &self.factors
    }

    pub fn context(&self) -> Option<&FieldContext> {
        self.ctx.as_deref()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `ord(g)`, the period of every dual sequence.
    pub fn order(&self) -> u64 {
        poly_order(&self.g).expect("validated generator")
    }

    /// Factor degrees, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().map(|f| f.degree).collect();
        d.sort_unstable();
        d
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        let (e, m) = match self.family {
            Family::Bch { e, m } => (Some(e), Some(m)),
            Family::Melas { m } => (None, Some(m)),
            Family::Generic => (None, self.ctx.as_ref().map(|c| c.m())),
        };
        CodeDescriptor {
            family: self.family.tag().to_string(),
            n: self.n,
            r: self.r(),
            g_hex: self.g.to_hex(),
            factors: self
                .factors
                .iter()
                .map(|f| FactorDescriptor { poly_hex: f.poly.to_hex(), degree: f.degree, exponent: f.exponent })
                .collect(),
            modulus_hex: self.ctx.as_ref().map(|c| c.modulus().to_hex()),
            e,
            m,
        }
    }

    pub fn from_descriptor(d: &CodeDescriptor) -> Result<Self> {
        let modulus = d.modulus_hex.as_deref().map(BinaryPolynomial::parse).transpose()?;
        let code = match d.family.as_str() {
            "bch" => {
                let (e, m) =
                    d.e.zip(d.m).ok_or_else(|| Error::InvalidArgument("bch descriptor needs `e` and `m`".into()))?;
                make_bch_with(e, m, modulus)?
            }
            "melas" => {
                let m = d.m.ok_or_else(|| Error::InvalidArgument("melas descriptor needs `m`".into()))?;
                make_melas_with(m, modulus)?
            }
            "generic" => make_cyclic_code_with(d.n, BinaryPolynomial::parse(&d.g_hex)?, modulus)?,
            other => return Err(Error::InvalidArgument(format!("unknown family `{other}`"))),
        };
        if code.n != d.n || code.g != BinaryPolynomial::parse(&d.g_hex)? || code.r() != d.r {
            return Err(Error::InvalidArgument("descriptor fields are inconsistent".into()));
        }
        Ok(code)
    }

    /// Evaluates the combination `(i, f)` as stacked values `beta_j^i f(beta_j)`.
    pub fn lc_eval(&self, i: usize, f: &BinaryPolynomial) -> u64 {
        let mut out = 0u64;
        let mut offset = 0;
        for fac in &self.factors {
            let ctx = fac.field();
            let v = ctx.mul(ctx.pow(fac.root, i as u64), ctx.eval(f, fac.root));
            out |= v.0 << offset;
            offset += fac.degree;
        }
        out
    }

    /// Column `j` of the parity-check matrix (stacked `beta^j`).
    pub fn column(&self, j: usize) -> u64 {
        let mut out = 0u64;
        let mut offset = 0;
        for fac in &self.factors {
            out |= fac.field().pow(fac.root, j as u64).0 << offset;
            offset += fac.degree;
        }
        out
    }

    pub fn parity_check_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_columns(self.r(), (0..self.n).map(|j| self.column(j)).collect())
            .expect("redundancy below 64")
    }

    /// Inverse of the leading `r x r` block of the parity-check matrix.
    pub fn leading_block_inverse(&self) -> Result<SquareInverse> {
        let r = self.r();
        let cols: Vec<u64> = (0..r).map(|j| self.column(j)).collect();
        BinaryMatrix::from_columns(r, cols)?.inverse()
    }

    /// Codeword `u g` for a message of degree `< n - r`.
    pub fn encode(&self, u: &BinaryPolynomial) -> Result<BinaryPolynomial> {
        if !u.degree().lt(self.n - self.r()) {
            return Err(Error::InvalidArgument("message degree must be below n - r".into()));
        }
        Ok(u.mul(&self.g))
    }
}

/// Sum of columns `h_{(i+j) mod n}` over `j` in the support of `f`.
pub fn lc_eval_columns(h: &BinaryMatrix, i: usize, f: &BinaryPolynomial) -> u64 {
    let n = h.cols();
    f.support().fold(0u64, |acc, j| acc ^ h.column((i + j) % n))
}

/// `lc_eval` with a debug cross-check against the explicit column sum.
pub fn lc_eval(code: &CyclicCode, i: usize, f: &BinaryPolynomial) -> u64 {
    let v = code.lc_eval(i, f);
    debug_assert_eq!(v, {
        let n = code.n();
        f.support().fold(0u64, |acc, j| acc ^ code.column((i + j) % n))
    });
    v
}

pub fn parity_check_matrix(code: &CyclicCode) -> BinaryMatrix {
    code.parity_check_matrix()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDescriptor {
    pub poly_hex: String,
    pub degree: usize,
    pub exponent: Option<i64>,
}

/// JSON descriptor of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub family: String,
    pub n: usize,
    pub r: usize,
    pub g_hex: String,
    pub factors: Vec<FactorDescriptor>,
    pub modulus_hex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

fn check_generator(n: usize, g: &BinaryPolynomial) -> Result<Vec<BinaryPolynomial>> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength(n));
    }
    let r = match g.degree().finite() {
        Some(r) if r >= 1 => r,
        _ => return Err(Error::InvalidArgument("generator must have degree >= 1".into())),
    };
    if r > MAX_REDUNDANCY {
        return Err(Error::DegreeTooLarge(r, MAX_REDUNDANCY));
    }
    if !g.coeff(0) || !BinaryPolynomial::x_pow_mod(n as u128, g)?.is_one() {
        return Err(Error::NotDivisorOfCyclic(n));
    }
    let factors = factorize(g);
    if factors.iter().any(|&(_, m)| m > 1) {
        return Err(Error::RepeatedFactors);
    }
    Ok(factors.into_iter().map(|(p, _)| p).collect())
}

fn own_field_factor(poly: BinaryPolynomial) -> Result<CodeFactor> {
    let field = Arc::new(FieldContext::new(poly.clone())?);
    let root = field.alpha();
    Ok(CodeFactor { degree: poly.deg(), primitive: is_primitive(&poly), exponent: None, poly, field, root })
}

fn shared_field_factor(poly: BinaryPolynomial, ctx: &Arc<FieldContext>, t: i64) -> Result<CodeFactor> {
    let degree = poly.deg();
    let primitive = is_primitive(&poly);
    if degree == ctx.m() {
        Ok(CodeFactor { root: ctx.alpha_pow(t), field: Arc::clone(ctx), exponent: Some(t), degree, primitive, poly })
    } else {
        // Subfield roots keep the exponent but expand in their own d-bit basis.
        let mut f = own_field_factor(poly)?;
        f.exponent = Some(t);
        Ok(f)
    }
}

/// Builds a cyclic code of length `n` with generator `g`, resolving root
/// exponents in the default splitting field when it is small enough.
pub fn make_cyclic_code(n: usize, g: BinaryPolynomial) -> Result<CyclicCode> {
    make_cyclic_code_with(n, g, None)
}

/// As [`make_cyclic_code`], optionally choosing the splitting-field modulus.
pub fn make_cyclic_code_with(n: usize, g: BinaryPolynomial, modulus: Option<BinaryPolynomial>) -> Result<CyclicCode> {
    let polys = check_generator(n, &g)?;
    let m = polys.iter().fold(1u64, |acc, p| lcm_u64(acc, p.deg() as u64)) as usize;
    let ctx = if let Some(modulus) = modulus {
        let ctx = FieldContext::new(modulus)?;
        if !ctx.is_primitive() || ctx.m() != m {
            return Err(Error::InvalidArgument(format!("modulus must be primitive of degree {m} for this generator")));
        }
        Some(Arc::new(ctx))
    } else if m <= MAX_SPLITTING_DEGREE {
        Some(Arc::new(FieldContext::new(default_primitive(m))?))
    } else {
        None
    };
    let factors = polys
        .into_iter()
        .map(|p| match &ctx {
            Some(ctx) => match ctx.root_exponent_of(&p) {
                Some(t) => shared_field_factor(p, ctx, t as i64),
                None => own_field_factor(p),
            },
            None => own_field_factor(p),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CyclicCode { n, g, factors, ctx, family: Family::Generic })
}

fn long_code_condition(e: usize, m: usize) -> bool {
    let half = m.div_ceil(2);
    half < 63 && (1u64 << half) > (2 * e as u64).saturating_sub(1)
}

/// Primitive narrow-sense BCH(e, m): roots `alpha, alpha^3, ..., alpha^(2e-1)`.
pub fn make_bch(e: usize, m: usize) -> Result<CyclicCode> {
    make_bch_with(e, m, None)
}

pub fn make_bch_with(e: usize, m: usize, modulus: Option<BinaryPolynomial>) -> Result<CyclicCode> {
    if e < 1 || m < 2 {
        return Err(Error::InvalidArgument("BCH needs e >= 1 and m >= 2".into()));
    }
    if !long_code_condition(e, m) {
        return Err(Error::LongCodeCondition { e, m });
    }
    if e * m > MAX_REDUNDANCY {
        return Err(Error::DegreeTooLarge(e * m, MAX_REDUNDANCY));
    }
    let ctx = Arc::new(match modulus {
        Some(p) => FieldContext::new(p)?,
        None => FieldContext::default_for(m)?,
    });
    if !ctx.is_primitive() || ctx.m() != m {
        return Err(Error::NotPrimitive);
    }
    let mut g = BinaryPolynomial::one();
    let mut factors = Vec::with_capacity(e);
    for i in 1..=e {
        let t = (2 * i - 1) as i64;
        let mi = ctx.minimal_polynomial(t)?;
        debug_assert_eq!(mi.deg(), m);
        g = g.mul(&mi);
        factors.push(shared_field_factor(mi, &ctx, t)?);
    }
    let n = (1usize << m) - 1;
    check_generator(n, &g)?;
    Ok(CyclicCode { n, g, factors, ctx: Some(ctx), family: Family::Bch { e, m } })
}

/// Melas(m): roots `alpha` and `alpha^{-1}`, generator `M_1` times its reciprocal.
pub fn make_melas(m: usize) -> Result<CyclicCode> {
    make_melas_with(m, None)
}

pub fn make_melas_with(m: usize, modulus: Option<BinaryPolynomial>) -> Result<CyclicCode> {
    if m < 3 {
        return Err(Error::MelasDegenerate(m));
    }
    if 2 * m > MAX_REDUNDANCY {
        return Err(Error::DegreeTooLarge(2 * m, MAX_REDUNDANCY));
    }
    let ctx = Arc::new(match modulus {
        Some(p) => FieldContext::new(p)?,
        None => FieldContext::default_for(m)?,
    });
    if !ctx.is_primitive() || ctx.m() != m {
        return Err(Error::NotPrimitive);
    }
    let m1 = ctx.minimal_polynomial(1)?;
    let rev = m1.reciprocal();
    if rev == m1 {
        return Err(Error::MelasDegenerate(m));
    }
    debug_assert_eq!(ctx.minimal_polynomial(-1)?, rev);
    let g = m1.mul(&rev);
    let n = (1usize << m) - 1;
    check_generator(n, &g)?;
    let factors = vec![shared_field_factor(m1, &ctx, 1)?, shared_field_factor(rev, &ctx, -1)?];
    Ok(CyclicCode { n, g, factors, ctx: Some(ctx), family: Family::Melas { m } })
}

/// Cyclic code with generator `(1 + X + X^2) f`, `f` primitive of even degree,
/// at length `lcm(3, ord f)`.
pub fn make_trinomial_product(f: &BinaryPolynomial) -> Result<CyclicCode> {
    if !is_primitive(f) || f.deg() < 3 {
        return Err(Error::InvalidArgument("f must be primitive of degree >= 3".into()));
    }
    let n = lcm_u64(3, poly_order(f)?) as usize;
    make_cyclic_code(n, BinaryPolynomial::from_u64(0b111).mul(f))
}

/// Named code for corpus-driven checks.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub code: CyclicCode,
}

fn product(hexes: &[u64]) -> BinaryPolynomial {
    hexes.iter().fold(BinaryPolynomial::one(), |acc, &h| acc.mul(&BinaryPolynomial::from_u64(h)))
}

/// Built-in corpus of cyclic codes with `n <= 63` and `r <= 14`.
pub fn standard_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut push = |name: String, code: CyclicCode| out.push(CorpusEntry { name, code });
    for m in 3..=6 {
        push(format!("hamming({m})"), make_bch(1, m)?);
    }
    for m in 3..=6 {
        push(format!("bch(2,{m})"), make_bch(2, m)?);
    }
    for m in 3..=6 {
        push(format!("melas({m})"), make_melas(m)?);
    }
    // (1 + X + X^2) f with f primitive of degree 4 and 6.
    for f in [0x13u64, 0x19, 0x43, 0x61] {
        let code = make_trinomial_product(&BinaryPolynomial::from_u64(f))?;
        push(format!("trinomial*{}", BinaryPolynomial::from_u64(f).to_hex()), code);
    }
    let generic: &[(usize, &[u64])] = &[
        (7, &[0x3, 0xb]),
        (15, &[0x3, 0x13]),
        (15, &[0x3, 0x13, 0x1f]),
        (21, &[0x7, 0xb]),
        (21, &[0x7, 0xd]),
        (63, &[0xb, 0x43]),
        (21, &[0xb, 0xd]),
        (9, &[0x49]),
        (9, &[0x7, 0x49]),
        (17, &[0x139]),
        (17, &[0x1d7]),
        (17, &[0x3, 0x139]),
        (5, &[0x1f]),
        (15, &[0x1f, 0x13]),
        (15, &[0x7, 0x1f]),
        (31, &[0x25, 0x3d]),
        (31, &[0x3, 0x25, 0x29]),
        (23, &[0xc75]),
        (21, &[0x57]),
        (63, &[0x3, 0x7, 0xb, 0x43]),
        (63, &[0x43, 0x67]),
    ];
    for &(n, hexes) in generic {
        let g = product(hexes);
        let name = format!("cyclic(n={n},g={})", g.to_hex());
        push(name, make_cyclic_code(n, g)?);
    }
    Ok(out)
}

/// Two-factor codes with distinct factor degrees (some beyond `n = 63`).
pub fn mixed_degree_corpus() -> Result<Vec<CorpusEntry>> {
    let pairs: &[&[u64]] =
        &[&[0xb, 0x13], &[0xb, 0x25], &[0x7, 0x25], &[0x13, 0x25], &[0xb, 0x43], &[0x1f, 0x25], &[0x7, 0xb]];
    pairs
        .iter()
        .map(|hexes| {
            let g = product(hexes);
            let n = poly_order(&g)? as usize;
            Ok(CorpusEntry { name: format!("mixed(g={})", g.to_hex()), code: make_cyclic_code(n, g)? })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPolynomial {
        BinaryPolynomial::parse(s).unwrap()
    }

    #[test]
    fn hamming_code() {
        let code = make_cyclic_code(7, p("x^3+x+1")).unwrap();
        assert_eq!((code.n(), code.r()), (7, 3));
        let h = code.parity_check_matrix();
        let mut cols: Vec<u64> = h.columns().to_vec();
        cols.sort_unstable();
        assert_eq!(cols, (1..8).collect::<Vec<u64>>());
        let bch1 = make_bch(1, 3).unwrap();
        assert_eq!(bch1.generator(), &p("x^3+x+1"));
    }

    #[test]
    fn bch_and_melas_sizes() {
        let c = make_bch(2, 6).unwrap();
        assert_eq!((c.n(), c.r()), (63, 12));
        let c = make_melas(6).unwrap();
        assert_eq!((c.n(), c.r()), (63, 12));
        assert_eq!(c.order(), 63);
        let c = make_bch(2, 3).unwrap();
        assert_eq!((c.n(), c.r()), (7, 6));
        assert_eq!(make_bch(3, 3).unwrap_err(), Error::LongCodeCondition { e: 3, m: 3 });
        assert!(make_melas(2).is_err());
    }

    #[test]
    fn generic_mixed_code() {
        let g = p("x^3+x+1").mul(&p("x^4+x+1"));
        let c = make_cyclic_code(105, g).unwrap();
        assert_eq!(c.r(), 7);
        assert_eq!(c.degrees(), vec![3, 4]);
        assert!(c.factors().iter().all(|f| f.primitive));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_cyclic_code(8, p("x+1")).unwrap_err(), Error::EvenLength(8));
        assert_eq!(make_cyclic_code(9, p("x^3+x+1")).unwrap_err(), Error::NotDivisorOfCyclic(9));
        assert!(make_cyclic_code(7, BinaryPolynomial::one()).is_err());
    }

    #[test]
    fn codewords_have_zero_syndrome() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for code in [make_bch(2, 6).unwrap(), make_melas(5).unwrap()] {
            let h = code.parity_check_matrix();
            assert!(h.is_full_row_rank());
            for _ in 0..100 {
                let k = code.n() - code.r();
                let u = BinaryPolynomial::from_coeffs((0..k).map(|_| rng.gen::<bool>()));
                let c = code.encode(&u).unwrap();
                assert_eq!(h.mul_support(c.support()), 0);
            }
        }
    }

    #[test]
    fn melas_column_stacks_inverse_powers() {
        let code = make_melas(5).unwrap();
        let ctx = code.context().unwrap();
        for j in 0..31 {
            let col = code.column(j);
            assert_eq!(col & 0x1f, ctx.alpha_pow(j as i64).0);
            assert_eq!(col >> 5, ctx.alpha_pow(-(j as i64)).0);
        }
    }

    #[test]
    fn lc_identities() {
        let code = make_bch(2, 5).unwrap();
        let h = code.parity_check_matrix();
        let f = p("x^4+x+1");
        assert_eq!(lc_eval(&code, 3, &BinaryPolynomial::zero()), 0);
        for i in 0..code.n() {
            let v = lc_eval(&code, i, &f);
            assert_eq!(v, lc_eval_columns(&h, i, &f));
            assert_eq!(lc_eval(&code, i, &f.shl(1)), lc_eval(&code, (i + 1) % code.n(), &f));
        }
    }

    #[test]
    fn leading_block_spans_all_syndromes() {
        let code = make_melas(4).unwrap();
        let r = code.r();
        let mut seen = vec![false; 1 << r];
        for v in 0..(1u64 << r) {
            seen[lc_eval(&code, 0, &BinaryPolynomial::from_u64(v)) as usize] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn long_bch_factors_are_full_degree_and_coprime() {
        for m in 2..=12usize {
            for e in 1..=12usize {
                if e * m > 24 || !long_code_condition(e, m) {
                    continue;
                }
                let c = make_bch(e, m).unwrap();
                assert!(c.factors().iter().all(|f| f.degree == m), "e={e} m={m}");
                for (i, a) in c.factors().iter().enumerate() {
                    for b in &c.factors()[i + 1..] {
                        assert!(a.poly.gcd(&b.poly).is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for code in [
            make_bch(2, 6).unwrap(),
            make_melas(5).unwrap(),
            make_cyclic_code(21, p("x^2+x+1").mul(&p("x^3+x+1"))).unwrap(),
        ] {
            let d = code.descriptor();
            let json = serde_json::to_string(&d).unwrap();
            let back: CodeDescriptor = serde_json::from_str(&json).unwrap();
            let again = CyclicCode::from_descriptor(&back).unwrap();
            assert_eq!(again.generator(), code.generator());
            assert_eq!(again.parity_check_matrix(), code.parity_check_matrix());
        }
        let d = make_melas(6).unwrap().descriptor();
        assert_eq!(d.factors[1].exponent, Some(-1));
        assert_eq!(d.modulus_hex.as_deref(), Some("0x43"));
    }

    #[test]
    fn corpus_meets_size_requirements() {
        let corpus = standard_corpus().unwrap();
        assert!(corpus.len() >= 30, "{}", corpus.len());
        for e in &corpus {
            assert!(e.code.n() <= 63 && e.code.r() <= 14, "{}", e.name);
        }
    }
}
