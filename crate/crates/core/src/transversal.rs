//! Lines meeting four given lines in RP^3.
//!
//! The solver works in the canonical chart where `[W3 W4] = Y`: a candidate
//! line is spanned by `(1, -x, 0, 0)` and `(0, 0, -1, y)`, which already meets
//! lines 3 and 4. Meeting lines 1 and 2 gives two bilinear equations in
//! `(x, y)` whose coefficients are 2x2 minors of `X`; eliminating `y` leaves a
//! quadratic in `x`. The oracle in [`oracle_plucker_solve`] solves the same
//! problem from scratch in Plücker coordinates.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{
    rational_sqrt, serde_rational, IndexSet, Mat, MatQ, MatQuad, QuadNum, Rational, Scalar,
};
use crate::error::{Error, Result};
use crate::totalpos::{
    canonicalize_unchecked, check_tp_config, CanonicalForm, ConfigBlocks, TpReport,
};

/// Sign relating `det[X_cols12 | U(x,y)]` to the unsigned-minor form
/// `Δ13·xy + Δ14·x + Δ23·y + Δ24`. Fixed by Laplace expansion along the two
/// columns of `U`; re-derived symbolically in the test suite.
pub const BILINEAR_SIGN: i64 = 1;

pub const WARN_HYPOTHESIS: &str = "hypothesis-not-verified";
pub const WARN_INFINITY: &str = "root-at-infinity";

/// `cxy·xy + cx·x + cy·y + c1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearForm {
    #[serde(with = "serde_rational")]
    pub cxy: Rational,
    #[serde(with = "serde_rational")]
    pub cx: Rational,
    #[serde(with = "serde_rational")]
    pub cy: Rational,
    #[serde(with = "serde_rational")]
    pub c1: Rational,
}

impl BilinearForm {
    pub fn new(cxy: Rational, cx: Rational, cy: Rational, c1: Rational) -> Self {
        BilinearForm { cxy, cx, cy, c1 }
    }

    fn coeffs(&self) -> [&Rational; 4] {
        [&self.cxy, &self.cx, &self.cy, &self.c1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_zero())
    }

    pub fn is_proportional(&self, other: &BilinearForm) -> bool {
        let (u, v) = (self.coeffs(), other.coeffs());
        (0..4).all(|i| (i + 1..4).all(|j| u[i] * v[j] == u[j] * v[i]))
    }

    pub fn eval(&self, x: &QuadNum, y: &QuadNum) -> QuadNum {
        let d = x.d();
        let lift = |r: &Rational| QuadNum::from_rational(r.clone(), d);
        let xy = x.times(y);
        lift(&self.cxy)
            .times(&xy)
            .plus(&lift(&self.cx).times(x))
            .plus(&lift(&self.cy).times(y))
            .plus(&lift(&self.c1))
    }

    /// The `y` solving the form at a given `x`, when its coefficient
    /// `cxy·x + cy` is nonzero.
    fn solve_y(&self, x: &QuadNum) -> Option<QuadNum> {
        let d = x.d();
        let lift = |r: &Rational| QuadNum::from_rational(r.clone(), d);
        let den = lift(&self.cxy).times(x).plus(&lift(&self.cy));
        let num = lift(&self.cx).times(x).plus(&lift(&self.c1)).negated();
        num.try_div(&den).ok()
    }
}

/// `a·x² + b·x + c = 0` with discriminant `d = b² − 4ac`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadratic {
    #[serde(rename = "A", with = "serde_rational")]
    pub a: Rational,
    #[serde(rename = "B", with = "serde_rational")]
    pub b: Rational,
    #[serde(rename = "C", with = "serde_rational")]
    pub c: Rational,
    #[serde(rename = "D", with = "serde_rational")]
    pub d: Rational,
}

impl Quadratic {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        let d = &b * &b - Rational::from_integer(4.into()) * &a * &c;
        Quadratic { a, b, c, d }
    }
}

const PAIRS: [(usize, usize); 4] = [(1, 3), (1, 4), (2, 3), (2, 4)];

fn minors_for(x: &MatQ, cols: (usize, usize)) -> Result<[Rational; 4]> {
    let c = IndexSet::new(vec![cols.0, cols.1])?;
    let mut out: [Rational; 4] = Default::default();
    for (slot, &(r1, r2)) in out.iter_mut().zip(&PAIRS) {
        *slot = x.minor(&IndexSet::new(vec![r1, r2])?, &c)?;
    }
    Ok(out)
}

/// The incidence conditions of the chart line with `W1 = X[:,12]` and
/// `W2 = X[:,34]`.
pub fn bilinear_forms(x: &MatQ) -> Result<(BilinearForm, BilinearForm)> {
    if x.rows() != 4 || x.cols() != 4 {
        return Err(Error::Dimension("bilinear_forms needs a 4x4 matrix".into()));
    }
    let s = Rational::from_integer(BILINEAR_SIGN.into());
    let form = |m: [Rational; 4]| {
        let [a, b, c, d] = m;
        BilinearForm::new(&s * a, &s * b, &s * c, &s * d)
    };
    Ok((form(minors_for(x, (1, 2))?), form(minors_for(x, (3, 4))?)))
}

/// Eliminates `y` between the two forms (their resultant in `y`).
pub fn eliminate_to_quadratic(f: &BilinearForm, h: &BilinearForm) -> Result<Quadratic> {
    if f.is_zero() || h.is_zero() || f.is_proportional(h) {
        return Err(Error::DegeneratePencil);
    }
    let a = &f.cxy * &h.cx - &f.cx * &h.cxy;
    let b = &f.cxy * &h.c1 + &f.cy * &h.cx - &f.cx * &h.cy - &f.c1 * &h.cxy;
    let c = &f.cy * &h.c1 - &f.c1 * &h.cy;
    Ok(Quadratic::new(a, b, c))
}

/// The discriminant written directly in the eight minors `Δ_{I,12}`,
/// `Δ_{I,34}`, independent of the elimination path.
pub fn discriminant_from_minors(x: &MatQ) -> Result<Rational> {
    let [d13a, d14a, d23a, d24a] = minors_for(x, (1, 2))?;
    let [d13b, d14b, d23b, d24b] = minors_for(x, (3, 4))?;
    let bracket = &d13a * &d24b - &d24a * &d13b - &d14a * &d23b + &d23a * &d14b;
    let left = &d13a * &d14b - &d14a * &d13b;
    let right = &d23a * &d24b - &d24a * &d23b;
    Ok(&bracket * &bracket - Rational::from_integer(4.into()) * left * right)
}

/// Plücker coordinates `(p12, p13, p14, p23, p24, p34)` of a 4x2 span.
pub fn plucker_of_span<T: Scalar>(span: &Mat<T>) -> Result<[T; 6]> {
    if span.rows() != 4 || span.cols() != 2 {
        return Err(Error::Dimension("a line span is 4x2".into()));
    }
    let m = |i: usize, j: usize| {
        span.get(i, 0)
            .times(span.get(j, 1))
            .minus(&span.get(j, 0).times(span.get(i, 1)))
    };
    let p = [m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)];
    if p.iter().all(Scalar::vanishes) {
        return Err(Error::DegenerateLine);
    }
    Ok(p)
}

/// The incidence pairing; zero iff the two lines meet. Equals
/// `det[span_p | span_q]` for the spans the coordinates came from.
pub fn plucker_meet<T: Scalar>(p: &[T; 6], q: &[T; 6]) -> T {
    p[0].times(&q[5])
        .minus(&p[1].times(&q[4]))
        .plus(&p[2].times(&q[3]))
        .plus(&p[3].times(&q[2]))
        .minus(&p[4].times(&q[1]))
        .plus(&p[5].times(&q[0]))
}

/// `p12·p34 − p13·p24 + p14·p23`, zero exactly on decomposable vectors.
pub fn plucker_quadric<T: Scalar>(p: &[T; 6]) -> T {
    p[0].times(&p[5])
        .minus(&p[1].times(&p[4]))
        .plus(&p[2].times(&p[3]))
}

/// All 15 cross products vanish.
pub fn proportional<T: Scalar>(p: &[T], q: &[T]) -> bool {
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| p[i].times(&q[j]) == p[j].times(&q[i])))
}

/// A line over Q(sqrt d): a rank-2 span and its Plücker vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRep {
    span: MatQuad,
    plucker: [QuadNum; 6],
}

impl LineRep {
    pub fn from_span(span: MatQuad) -> Result<Self> {
        let plucker = plucker_of_span(&span)?;
        Ok(LineRep { span, plucker })
    }

    /// Rebuilds a span from a decomposable Plücker vector using two
    /// independent columns of its skew-symmetric matrix.
    pub fn from_plucker(p: &[QuadNum; 6]) -> Result<Self> {
        if !plucker_quadric(p).vanishes() {
            return Err(Error::Input("vector is not on the Plücker quadric".into()));
        }
        let zero = p[0].zero_like();
        let idx = |i: usize, j: usize| match (i, j) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            (2, 3) => 5,
            _ => unreachable!(),
        };
        let skew = Mat::from_fn(4, 4, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => p[idx(i, j)].clone(),
            std::cmp::Ordering::Greater => p[idx(j, i)].negated(),
            std::cmp::Ordering::Equal => zero.clone(),
        });
        for k in 0..4 {
            for l in k + 1..4 {
                let span = skew.select_cols(&[k, l]);
                if let Ok(line) = LineRep::from_span(span) {
                    return Ok(line);
                }
            }
        }
        Err(Error::DegenerateLine)
    }

    pub fn span(&self) -> &MatQuad {
        &self.span
    }

    pub fn plucker(&self) -> &[QuadNum; 6] {
        &self.plucker
    }

    pub fn radicand(&self) -> &Rational {
        self.plucker[0].d()
    }

    pub fn approx(&self) -> [f64; 6] {
        std::array::from_fn(|k| self.plucker[k].to_f64())
    }

    pub fn transform(&self, h: &MatQ) -> Result<Self> {
        LineRep::from_span(h.to_quad(self.radicand()).mul(&self.span)?)
    }

    /// Image under `sqrt d -> -sqrt d`.
    pub fn conj(&self) -> Self {
        LineRep {
            span: self.span.map(QuadNum::conj),
            plucker: std::array::from_fn(|k| self.plucker[k].conj()),
        }
    }

    pub fn rebase(&self, d: &Rational) -> Option<Self> {
        let mut rows = Vec::with_capacity(4);
        for i in 0..4 {
            let r: Option<Vec<QuadNum>> = self.span.row(i).iter().map(|x| x.rebase(d)).collect();
            rows.push(r?);
        }
        LineRep::from_span(Mat::from_rows(rows).ok()?).ok()
    }

    /// Same point of Gr(2,4); rebases when the radicands describe the same
    /// field.
    pub fn same_line(&self, other: &LineRep) -> bool {
        if self.radicand() == other.radicand() {
            return proportional(&self.plucker, &other.plucker);
        }
        if let Some(o) = other.rebase(self.radicand()) {
            return proportional(&self.plucker, &o.plucker);
        }
        if let Some(s) = self.rebase(other.radicand()) {
            return proportional(&s.plucker, &other.plucker);
        }
        false
    }

    /// `det[W | span]`.
    pub fn meet_block(&self, w: &MatQ) -> Result<QuadNum> {
        w.to_quad(self.radicand()).hcat(&self.span)?.det_cofactor()
    }
}

#[derive(Serialize, Deserialize)]
struct LineRepr {
    span: MatQuad,
    plucker: Vec<QuadNum>,
    approx: Vec<f64>,
}

impl Serialize for LineRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LineRepr {
            span: self.span.clone(),
            plucker: self.plucker.to_vec(),
            approx: self.approx().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LineRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = LineRepr::deserialize(d)?;
        let line = LineRep::from_span(r.span).map_err(D::Error::custom)?;
        if line.plucker.as_slice() != r.plucker.as_slice() {
            return Err(D::Error::custom("plucker vector does not match span"));
        }
        Ok(line)
    }
}

/// Spanning matrix of the chart line: columns `(1, −x, 0, 0)`, `(0, 0, −1, y)`.
pub fn chart_span(x: &QuadNum, y: &QuadNum) -> MatQuad {
    let z = x.zero_like();
    let one = x.one_like();
    Mat::from_rows(vec![
        vec![one.clone(), z.clone()],
        vec![x.negated(), z.clone()],
        vec![z.clone(), one.negated()],
        vec![z, y.clone()],
    ])
    .expect("static shape")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartRoot {
    pub x: Option<QuadNum>,
    pub y: QuadNum,
}

/// Solution in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSolution {
    pub forms: (BilinearForm, BilinearForm),
    pub quadratic: Quadratic,
    /// `x = None` marks the limit line at `x = ∞`.
    pub roots: Vec<ChartRoot>,
    pub lines: Vec<LineRep>,
    pub warnings: Vec<String>,
}

fn recover_y(f: &BilinearForm, h: &BilinearForm, x: &QuadNum) -> Result<QuadNum> {
    h.solve_y(x)
        .or_else(|| f.solve_y(x))
        .ok_or_else(|| Error::NonGeneric(format!("both y-denominators vanish at x = {x}")))
}

/// Solves in the chart for a 4x4 `X` (expected totally positive).
pub fn solve_canonical(x: &MatQ) -> Result<CanonicalSolution> {
    let (f, h) = bilinear_forms(x)?;
    let quad = eliminate_to_quadratic(&f, &h)?;
    let d = quad.d.clone();
    let two = Rational::from_integer(2.into());
    let mut warnings = Vec::new();
    let mut roots = Vec::with_capacity(2);

    if quad.a.is_zero() {
        if quad.b.is_zero() {
            return Err(Error::NonGeneric(
                "eliminated quadratic vanishes to a constant".into(),
            ));
        }
        let x0 = QuadNum::from_rational(-&quad.c / &quad.b, &d);
        roots.push(ChartRoot {
            y: recover_y(&f, &h, &x0)?,
            x: Some(x0),
        });
        // x -> ∞: each form reduces to cxy·y + cx = 0
        let lead = if !h.cxy.is_zero() { &h } else { &f };
        if lead.cxy.is_zero() {
            return Err(Error::NonGeneric("no limit line at x = ∞".into()));
        }
        roots.push(ChartRoot {
            x: None,
            y: QuadNum::from_rational(-&lead.cx / &lead.cxy, &d),
        });
        warnings.push(WARN_INFINITY.to_string());
    } else {
        if d.is_negative() {
            return Err(Error::NoRealSolution(d));
        }
        if d.is_zero() {
            return Err(Error::DoubleRoot);
        }
        let base = -&quad.b / (&two * &quad.a);
        let xs: [QuadNum; 2] = match rational_sqrt(&d) {
            Some(s) => {
                let off = s / (&two * &quad.a);
                [
                    QuadNum::from_rational(&base + &off, &d),
                    QuadNum::from_rational(&base - &off, &d),
                ]
            }
            None => {
                let off = Rational::one() / (&two * &quad.a);
                [
                    QuadNum::new(base.clone(), off.clone(), d.clone())?,
                    QuadNum::new(base, -off, d.clone())?,
                ]
            }
        };
        for xr in xs {
            roots.push(ChartRoot {
                y: recover_y(&f, &h, &xr)?,
                x: Some(xr),
            });
        }
    }

    let mut lines = Vec::with_capacity(2);
    for r in &roots {
        let span = match &r.x {
            Some(xr) => {
                if !f.eval(xr, &r.y).vanishes() || !h.eval(xr, &r.y).vanishes() {
                    return Err(Error::NonGeneric(format!(
                        "root ({xr}, {}) does not satisfy both forms",
                        r.y
                    )));
                }
                chart_span(xr, &r.y)
            }
            None => {
                let z = r.y.zero_like();
                let one = r.y.one_like();
                Mat::from_rows(vec![
                    vec![z.clone(), z.clone()],
                    vec![one.clone(), z.clone()],
                    vec![z.clone(), one.negated()],
                    vec![z, r.y.clone()],
                ])?
            }
        };
        lines.push(LineRep::from_span(span)?);
    }
    Ok(CanonicalSolution {
        forms: (f, h),
        quadratic: quad,
        roots,
        lines,
        warnings,
    })
}

/// Full solution in the caller's coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalSolution {
    pub canonical: CanonicalForm,
    pub forms: [BilinearForm; 2],
    pub quadratic: Quadratic,
    pub roots: Vec<ChartRoot>,
    pub lines: Vec<LineRep>,
    /// `incidence[i][j] = det[W_{i+1} | span(L_{j+1})]`, all exactly zero.
    pub incidence: Vec<Vec<QuadNum>>,
    pub tp_report: TpReport,
    pub warnings: Vec<String>,
}

impl TransversalSolution {
    pub fn radicand(&self) -> &Rational {
        &self.quadratic.d
    }
}

pub fn solve_transversals(blocks: &ConfigBlocks) -> Result<TransversalSolution> {
    let tp_report = check_tp_config(blocks)?;
    let (canonical, x_report) = canonicalize_unchecked(blocks)?;
    let mut warnings = Vec::new();
    if tp_report.ok {
        // positivity of all 70 maximal minors forces det(g) > 0 and X TP
        x_report.into_result()?;
    } else {
        warnings.push(WARN_HYPOTHESIS.to_string());
    }

    let sol = solve_canonical(&canonical.x)?;
    if tp_report.ok && !sol.quadratic.d.is_positive() {
        return Err(Error::HypothesisViolation {
            what: "discriminant".into(),
            value: sol.quadratic.d.clone(),
        });
    }
    if tp_report.ok && sol.quadratic.a.is_zero() {
        return Err(Error::HypothesisViolation {
            what: "leading coefficient A".into(),
            value: sol.quadratic.a.clone(),
        });
    }
    warnings.extend(sol.warnings.iter().cloned());

    let g_inv = canonical.g.inverse()?;
    let mut lines = Vec::with_capacity(2);
    for l in &sol.lines {
        lines.push(l.transform(&g_inv)?);
    }
    if lines.len() != 2 || lines[0].same_line(&lines[1]) {
        return Err(Error::DoubleRoot);
    }

    let mut incidence = Vec::with_capacity(4);
    for (i, w) in blocks.blocks().iter().enumerate() {
        let mut row = Vec::with_capacity(2);
        for (j, l) in lines.iter().enumerate() {
            let v = l.meet_block(w)?;
            if !v.vanishes() {
                return Err(Error::NonGeneric(format!(
                    "line {} does not meet W{}: det = {v}",
                    j + 1,
                    i + 1
                )));
            }
            row.push(v);
        }
        incidence.push(row);
    }

    let (f, h) = sol.forms;
    Ok(TransversalSolution {
        canonical,
        forms: [f, h],
        quadratic: sol.quadratic,
        roots: sol.roots,
        lines,
        incidence,
        tp_report,
        warnings,
    })
}

/// Independent route: the four incidence conditions cut a 2-dimensional
/// subspace of Plücker space; the lines are its intersection with the
/// Plücker quadric.
pub fn oracle_plucker_solve(blocks: &ConfigBlocks) -> Result<Vec<LineRep>> {
    let mut rows = Vec::with_capacity(4);
    for w in blocks.blocks() {
        let q = plucker_of_span(w)?;
        // coefficients of p in plucker_meet(p, q)
        rows.push(vec![
            q[5].clone(),
            -q[4].clone(),
            q[3].clone(),
            q[2].clone(),
            -q[1].clone(),
            q[0].clone(),
        ]);
    }
    let conditions = Mat::from_rows(rows)?;
    let basis = conditions.nullspace();
    if basis.len() != 2 {
        return Err(Error::DegenerateConfiguration(format!(
            "incidence conditions leave a {}-dimensional solution space, expected 2",
            basis.len()
        )));
    }
    let v1: [Rational; 6] = basis[0].clone().try_into().expect("length 6");
    let v2: [Rational; 6] = basis[1].clone().try_into().expect("length 6");
    let alpha = plucker_quadric(&v1);
    let beta = plucker_meet(&v1, &v2);
    let gamma = plucker_quadric(&v2);
    if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
        return Err(Error::DegenerateConfiguration(
            "every line of the pencil meets all four lines".into(),
        ));
    }
    let disc = &beta * &beta - Rational::from_integer(4.into()) * &alpha * &gamma;
    if disc.is_negative() {
        return Ok(Vec::new());
    }

    let lift = |r: &Rational| QuadNum::from_rational(r.clone(), &disc);
    let combine = |s: &QuadNum, t: &QuadNum| -> [QuadNum; 6] {
        std::array::from_fn(|k| s.times(&lift(&v1[k])).plus(&t.times(&lift(&v2[k]))))
    };
    let one = lift(&Rational::one());
    let zero = lift(&Rational::zero());
    let two = Rational::from_integer(2.into());

    // binary quadratic alpha·s² + beta·s·t + gamma·t²
    let mut sols: Vec<(QuadNum, QuadNum)> = Vec::new();
    if alpha.is_zero() {
        sols.push((one.clone(), zero.clone()));
        if !beta.is_zero() {
            sols.push((lift(&gamma), lift(&-&beta)));
        }
    } else {
        let base = -&beta / (&two * &alpha);
        if disc.is_zero() {
            sols.push((lift(&base), one.clone()));
        } else if let Some(s) = rational_sqrt(&disc) {
            let off = s / (&two * &alpha);
            sols.push((lift(&(&base + &off)), one.clone()));
            sols.push((lift(&(&base - &off)), one.clone()));
        } else {
            let off = Rational::one() / (&two * &alpha);
            sols.push((
                QuadNum::new(base.clone(), off.clone(), disc.clone())?,
                one.clone(),
            ));
            sols.push((QuadNum::new(base, -off, disc.clone())?, one.clone()));
        }
    }
    sols.iter()
        .map(|(s, t)| LineRep::from_plucker(&combine(s, t)))
        .collect()
}

/// Unordered comparison of two line pairs.
pub fn same_line_pair(a: &[LineRep], b: &[LineRep]) -> bool {
    if a.len() != 2 || b.len() != 2 {
        return false;
    }
    (a[0].same_line(&b[0]) && a[1].same_line(&b[1]))
        || (a[0].same_line(&b[1]) && a[1].same_line(&b[0]))
}
