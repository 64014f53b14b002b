//! Total positivity of 4x8 block configurations, the reduction of such a
//! configuration to `[X Y]` with `Y` a fixed signed anti-diagonal, and the
//! 16-parameter Loewner–Whitney chart of 4x4 totally positive matrices.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{combinations, q, qi, serde_rational, IndexSet, Mat, MatQ, Rational};
use crate::error::{Error, Result};
use crate::poly::VAR_NAMES;

/// The signed anti-diagonal matrix `[W3 W4]` is reduced to.
pub fn sign_matrix_y() -> MatQ {
    MatQ::from_i64(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]])
        .expect("static shape")
}

/// Four 4x2 blocks, each spanning a 2-plane in Q^4 (a line in RP^3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigBlocks {
    blocks: [MatQ; 4],
}

impl ConfigBlocks {
    pub fn new(blocks: [MatQ; 4]) -> Result<Self> {
        for (k, b) in blocks.iter().enumerate() {
            if b.rows() != 4 || b.cols() != 2 {
                return Err(Error::Input(format!(
                    "block W{} is {}x{}, expected 4x2",
                    k + 1,
                    b.rows(),
                    b.cols()
                )));
            }
            if b.rank() < 2 {
                return Err(Error::Input(format!("block W{} has rank < 2", k + 1)));
            }
        }
        Ok(ConfigBlocks { blocks })
    }

    /// Splits a 4x8 matrix into four consecutive column pairs.
    pub fn from_concat(a: &MatQ) -> Result<Self> {
        if a.rows() != 4 || a.cols() != 8 {
            return Err(Error::Dimension(format!(
                "expected 4x8, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        ConfigBlocks::new(std::array::from_fn(|k| a.select_cols(&[2 * k, 2 * k + 1])))
    }

    /// Blocks taken from the columns of `[x y]`.
    pub fn from_xy(x: &MatQ, y: &MatQ) -> Result<Self> {
        ConfigBlocks::from_concat(&x.hcat(y)?)
    }

    pub fn block(&self, k: usize) -> &MatQ {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[MatQ; 4] {
        &self.blocks
    }

    /// `A = [W1 W2 W3 W4]`.
    pub fn concat(&self) -> MatQ {
        let b = &self.blocks;
        b[0].hcat(&b[1])
            .and_then(|m| m.hcat(&b[2]))
            .and_then(|m| m.hcat(&b[3]))
            .expect("blocks share 4 rows")
    }

    /// `h * W_k` for each block.
    pub fn transform(&self, h: &MatQ) -> Result<Self> {
        let mut out = Vec::with_capacity(4);
        for b in &self.blocks {
            out.push(h.mul(b)?);
        }
        ConfigBlocks::new(out.try_into().expect("four blocks"))
    }
}

#[derive(Serialize, Deserialize)]
struct BlocksRepr {
    blocks: Vec<MatQ>,
}

impl Serialize for ConfigBlocks {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BlocksRepr {
            blocks: self.blocks.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConfigBlocks {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BlocksRepr::deserialize(d)?;
        let arr: [MatQ; 4] = r.blocks.try_into().map_err(|v: Vec<MatQ>| {
            D::Error::custom(format!("expected 4 blocks, got {}", v.len()))
        })?;
        ConfigBlocks::new(arr).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<IndexSet>,
    pub cols: IndexSet,
    #[serde(with = "serde_rational")]
    pub minor: Rational,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rows {
            Some(r) => write!(f, "rows {r} cols {}", self.cols),
            None => write!(f, "cols {}", self.cols),
        }
    }
}

/// Outcome of a positivity check; the witness is the first failing minor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpReport {
    pub ok: bool,
    pub witness: Option<Witness>,
}

impl TpReport {
    fn pass() -> Self {
        TpReport {
            ok: true,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Self {
        TpReport {
            ok: false,
            witness: Some(w),
        }
    }

    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some(w) => Err(Error::HypothesisViolation {
                what: w.to_string(),
                value: w.minor,
            }),
        }
    }
}

/// All 70 maximal minors of `A = [W1 W2 W3 W4]` strictly positive, checked
/// in lexicographic order of column sets.
pub fn check_tp_config(blocks: &ConfigBlocks) -> Result<TpReport> {
    for (k, b) in blocks.blocks().iter().enumerate() {
        if b.rank() < 2 {
            return Err(Error::Input(format!("block W{} has rank < 2", k + 1)));
        }
    }
    let a = blocks.concat();
    let rows = IndexSet::new(vec![1, 2, 3, 4])?;
    for cols in combinations(8, 4) {
        let m = a.minor(&rows, &cols)?;
        if !m.is_positive() {
            return Ok(TpReport::fail(Witness {
                rows: None,
                cols,
                minor: m,
            }));
        }
    }
    Ok(TpReport::pass())
}

/// All 69 minors of orders 1..4 of a 4x4 matrix strictly positive.
pub fn check_tp_square(x: &MatQ) -> Result<TpReport> {
    if x.rows() != 4 || x.cols() != 4 {
        return Err(Error::Dimension(format!(
            "expected 4x4, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    for k in 1..=4 {
        let sets = combinations(4, k);
        for rows in &sets {
            for cols in &sets {
                let m = x.minor(rows, cols)?;
                if !m.is_positive() {
                    return Ok(TpReport::fail(Witness {
                        rows: Some(rows.clone()),
                        cols: cols.clone(),
                        minor: m,
                    }));
                }
            }
        }
    }
    Ok(TpReport::pass())
}

/// Which lower unitriangular factor to use.
///
/// `Standard` has `(4,3) = i`, making the factor totally positive for
/// positive parameters. `AsPrinted` has `(4,3) = k`, which is not totally
/// positive when `i > h + k`; it is kept for comparison certificates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerChart {
    #[default]
    Standard,
    AsPrinted,
}

/// The 16 positive parameters `a..p` of the factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LwParams {
    values: [Rational; 16],
}

impl LwParams {
    pub fn new(values: [Rational; 16]) -> Result<Self> {
        if let Some(k) = values.iter().position(|v| !v.is_positive()) {
            return Err(Error::Domain(format!(
                "parameter `{}` = {} is not positive",
                VAR_NAMES[k], values[k]
            )));
        }
        Ok(LwParams { values })
    }

    pub fn all_ones() -> Self {
        LwParams {
            values: std::array::from_fn(|_| Rational::one()),
        }
    }

    pub fn get(&self, name: char) -> &Rational {
        let k = VAR_NAMES
            .iter()
            .position(|&c| c == name)
            .unwrap_or_else(|| panic!("unknown parameter {name:?}"));
        &self.values[k]
    }

    pub fn values(&self) -> &[Rational; 16] {
        &self.values
    }

    pub fn with(&self, name: char, v: Rational) -> Result<Self> {
        let mut values = self.values.clone();
        let k = VAR_NAMES
            .iter()
            .position(|&c| c == name)
            .ok_or_else(|| Error::Input(format!("unknown parameter {name:?}")))?;
        values[k] = v;
        LwParams::new(values)
    }
}

impl Serialize for LwParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(16))?;
        for (name, v) in VAR_NAMES.iter().zip(&self.values) {
            m.serialize_entry(&name.to_string(), &v.to_string())?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LwParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = std::collections::BTreeMap::<String, String>::deserialize(d)?;
        if map.len() != 16 {
            return Err(D::Error::custom("expected exactly the 16 parameters a..p"));
        }
        let mut values: [Rational; 16] = std::array::from_fn(|_| Rational::zero());
        for (k, name) in VAR_NAMES.iter().enumerate() {
            let s = map
                .get(&name.to_string())
                .ok_or_else(|| D::Error::custom(format!("missing parameter {name}")))?;
            values[k] = crate::arith::parse_rational(s).map_err(D::Error::custom)?;
        }
        LwParams::new(values).map_err(D::Error::custom)
    }
}

fn lower_factor(p: &LwParams, chart: LowerChart) -> MatQ {
    let v = |c| p.get(c).clone();
    let (g, h, i, j, k, l) = (v('g'), v('h'), v('i'), v('j'), v('k'), v('l'));
    let l43 = match chart {
        LowerChart::Standard => i.clone(),
        LowerChart::AsPrinted => k.clone(),
    };
    let z = Rational::zero;
    let o = Rational::one;
    Mat::from_rows(vec![
        vec![o(), z(), z(), z()],
        vec![&g + &j + &l, o(), z(), z()],
        vec![&h * &j + &h * &l + &k * &l, &h + &k, o(), z()],
        vec![&i * &k * &l, &i * &k, l43, o()],
    ])
    .expect("static shape")
}

fn upper_factor(p: &LwParams) -> MatQ {
    let v = |c| p.get(c).clone();
    let (a, b, c, d, e, f) = (v('a'), v('b'), v('c'), v('d'), v('e'), v('f'));
    let z = Rational::zero;
    let o = Rational::one;
    Mat::from_rows(vec![
        vec![o(), &f + &d + &a, &a * &b + &a * &e + &d * &e, &a * &b * &c],
        vec![z(), o(), &b + &e, &b * &c],
        vec![z(), z(), o(), c.clone()],
        vec![z(), z(), z(), o()],
    ])
    .expect("static shape")
}

/// `(L, diag(m, n, o, p), U)`.
pub fn lw_factors(p: &LwParams, chart: LowerChart) -> (MatQ, MatQ, MatQ) {
    let diag = MatQ::diag(&[
        p.get('m').clone(),
        p.get('n').clone(),
        p.get('o').clone(),
        p.get('p').clone(),
    ]);
    (lower_factor(p, chart), diag, upper_factor(p))
}

pub fn lw_compose_with(p: &LwParams, chart: LowerChart) -> MatQ {
    let (l, d, u) = lw_factors(p, chart);
    l.mul(&d).and_then(|m| m.mul(&u)).expect("4x4 factors")
}

/// `L * diag(m, n, o, p) * U` in the standard chart.
pub fn lw_compose(p: &LwParams) -> MatQ {
    lw_compose_with(p, LowerChart::Standard)
}

pub fn lw_factor(x: &MatQ) -> Result<LwParams> {
    lw_factor_with(x, LowerChart::Standard)
}

/// Recovers the parameters from an LDU decomposition (no pivoting) of `x`.
pub fn lw_factor_with(x: &MatQ, chart: LowerChart) -> Result<LwParams> {
    if x.rows() != 4 || x.cols() != 4 {
        return Err(Error::Dimension("lw_factor needs a 4x4 matrix".into()));
    }
    let mut a = x.to_rows();
    let mut lower = MatQ::identity(4).to_rows();
    let mut pivots = Vec::with_capacity(4);
    for k in 0..4 {
        let piv = a[k][k].clone();
        if !piv.is_positive() {
            return Err(Error::NotTotallyPositive {
                param: ['m', 'n', 'o', 'p'][k],
                reason: format!("pivot {piv} is not positive"),
            });
        }
        let prow = a[k].clone();
        for i in k + 1..4 {
            let f = &a[i][k] / &piv;
            for (x, p) in a[i].iter_mut().zip(&prow).skip(k) {
                *x -= &f * p;
            }
            lower[i][k] = f;
        }
        pivots.push(piv);
    }
    let upper: Vec<Vec<Rational>> = (0..4)
        .map(|i| (0..4).map(|j| &a[i][j] / &pivots[i]).collect())
        .collect();
    let u = |i: usize, j: usize| upper[i - 1][j - 1].clone();
    let l = |i: usize, j: usize| lower[i - 1][j - 1].clone();

    let div = |num: Rational, den: &Rational, param: char| -> Result<Rational> {
        if den.is_zero() {
            return Err(Error::NotTotallyPositive {
                param,
                reason: "has a zero denominator".into(),
            });
        }
        Ok(num / den)
    };
    let positive = |v: Rational, param: char| -> Result<Rational> {
        if v.is_positive() {
            Ok(v)
        } else {
            Err(Error::NotTotallyPositive {
                param,
                reason: format!("recovered as {v}"),
            })
        }
    };

    let pc = positive(u(3, 4), 'c')?;
    let pb = positive(div(u(2, 4), &pc, 'b')?, 'b')?;
    let pe = positive(u(2, 3) - &pb, 'e')?;
    let pa = positive(div(u(1, 4), &(&pb * &pc), 'a')?, 'a')?;
    let pd = positive(div(u(1, 3) - &pa * u(2, 3), &pe, 'd')?, 'd')?;
    let pf = positive(u(1, 2) - &pd - &pa, 'f')?;

    let (pi, pk) = match chart {
        LowerChart::Standard => {
            let pi = positive(l(4, 3), 'i')?;
            let pk = positive(div(l(4, 2), &pi, 'k')?, 'k')?;
            (pi, pk)
        }
        LowerChart::AsPrinted => {
            let pk = positive(l(4, 3), 'k')?;
            let pi = positive(div(l(4, 2), &pk, 'i')?, 'i')?;
            (pi, pk)
        }
    };
    let pl = positive(div(l(4, 1), &l(4, 2), 'l')?, 'l')?;
    let ph = positive(l(3, 2) - &pk, 'h')?;
    let pj = positive(div(l(3, 1) - l(3, 2) * &pl, &ph, 'j')?, 'j')?;
    let pg = positive(l(2, 1) - &pj - &pl, 'g')?;

    let [pm, pn, po, pp]: [Rational; 4] = pivots.try_into().expect("four pivots");
    let params = LwParams::new([
        pa, pb, pc, pd, pe, pf, pg, ph, pi, pj, pk, pl, pm, pn, po, pp,
    ])?;
    if lw_compose_with(&params, chart) != *x {
        // the lower factor of the other chart can fit entries this one cannot
        return Err(Error::NotTotallyPositive {
            param: 'i',
            reason: "recovered parameters do not reproduce the matrix".into(),
        });
    }
    Ok(params)
}

/// `g * [W1 W2 W3 W4] = [X Y]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub g: MatQ,
    #[serde(rename = "X")]
    pub x: MatQ,
    #[serde(rename = "Y")]
    pub y: MatQ,
}

/// Computes `g = Y [W3 W4]^-1` and `X = g [W1 W2]` without asserting the
/// positivity postconditions; returns them as a report on `X` instead.
pub fn canonicalize_unchecked(blocks: &ConfigBlocks) -> Result<(CanonicalForm, TpReport)> {
    let b = blocks.blocks();
    let w34 = b[2].hcat(&b[3])?;
    let det34 = w34.det()?;
    if det34.is_zero() {
        return Err(Error::DegenerateConfiguration(
            "det[W3 W4] = 0: the planes of lines 3 and 4 meet".into(),
        ));
    }
    let y = sign_matrix_y();
    let g = y.mul(&w34.inverse()?)?;
    let x = g.mul(&b[0].hcat(&b[1])?)?;
    let det_g = g.det()?;
    let report = if !det_g.is_positive() {
        TpReport::fail(Witness {
            rows: None,
            cols: IndexSet::new(vec![5, 6, 7, 8])?,
            minor: det34,
        })
    } else {
        check_tp_square(&x)?
    };
    Ok((CanonicalForm { g, x, y }, report))
}

/// Strict reduction: `det(g) > 0` and `X` totally positive, or a
/// hypothesis-violation error carrying the failing minor.
pub fn canonicalize(blocks: &ConfigBlocks) -> Result<CanonicalForm> {
    let (form, report) = canonicalize_unchecked(blocks)?;
    report.into_result()?;
    Ok(form)
}

/// Deterministic TP instance: random positive parameters with numerator and
/// denominator in `1..=bound`, blocks from the columns of `h·[X Y]` for a
/// random `h` with `det h > 0`.
pub fn random_tp_instance(seed: u64, bound: u32) -> Result<(LwParams, ConfigBlocks)> {
    if bound < 1 {
        return Err(Error::Input("bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = random_params(&mut rng, bound);
    let x = lw_compose(&params);
    let h = random_positive_det(&mut rng);
    let blocks = ConfigBlocks::from_xy(&x, &sign_matrix_y())?.transform(&h)?;
    Ok((params, blocks))
}

pub fn random_params(rng: &mut impl Rng, bound: u32) -> LwParams {
    let b = bound.max(1) as i64;
    let values = std::array::from_fn(|_| q(rng.gen_range(1..=b), rng.gen_range(1..=b)));
    LwParams::new(values).expect("positive by construction")
}

/// Random 4x4 matrix with small integer entries and positive determinant.
pub fn random_positive_det(rng: &mut impl Rng) -> MatQ {
    loop {
        let mut m = Mat::from_fn(4, 4, |_, _| qi(rng.gen_range(-3..=3)));
        let d = m.det().expect("square");
        if d.is_zero() {
            continue;
        }
        if d.is_negative() {
            let mut rows = m.to_rows();
            rows.swap(0, 1);
            m = Mat::from_rows(rows).expect("square");
        }
        return m;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> MatQ {
        MatQ::from_i64(&[
            &[1, 3, 3, 1],
            &[3, 10, 11, 4],
            &[3, 11, 14, 6],
            &[1, 4, 6, 4],
        ])
        .unwrap()
    }

    fn x1_blocks() -> ConfigBlocks {
        ConfigBlocks::from_xy(&x1(), &sign_matrix_y()).unwrap()
    }

    #[test]
    fn compose_all_ones() {
        assert_eq!(lw_compose(&LwParams::all_ones()), x1());
        assert_eq!(
            lw_compose_with(&LwParams::all_ones(), LowerChart::AsPrinted),
            x1()
        );
    }

    #[test]
    fn diagonal_scaling_acts_on_rows() {
        let p = LwParams::all_ones().with('m', qi(2)).unwrap();
        let x = lw_compose(&p);
        let base = x1();
        // m sits in column 1 of L*diag; with L's first row (1,0,0,0), row 1 doubles
        for j in 0..4 {
            assert_eq!(x.get(0, j), &(base.get(0, j) * qi(2)));
        }
        assert_eq!(lw_compose(&p).det().unwrap(), qi(2));
    }

    #[test]
    fn non_positive_parameter_rejected() {
        assert!(matches!(
            LwParams::all_ones().with('e', qi(0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn factor_round_trip_and_errors() {
        assert_eq!(lw_factor(&x1()).unwrap(), LwParams::all_ones());
        assert!(matches!(
            lw_factor(&MatQ::identity(4)),
            Err(Error::NotTotallyPositive { .. })
        ));
    }

    #[test]
    fn printed_chart_is_not_totally_positive() {
        // i > h + k breaks the (rows 34, cols 23) minor of the printed factor
        let p = LwParams::all_ones().with('i', qi(3)).unwrap();
        let x = lw_compose_with(&p, LowerChart::AsPrinted);
        assert!(!check_tp_square(&x).unwrap().ok);
        assert!(check_tp_square(&lw_compose(&p)).unwrap().ok);
    }

    #[test]
    fn tp_square_examples() {
        let pascal = MatQ::from_i64(&[
            &[1, 1, 1, 1],
            &[1, 2, 3, 4],
            &[1, 3, 6, 10],
            &[1, 4, 10, 20],
        ])
        .unwrap();
        assert!(check_tp_square(&pascal).unwrap().ok);
        assert!(check_tp_square(&x1()).unwrap().ok);
        let r = check_tp_square(&MatQ::identity(4)).unwrap();
        assert!(!r.ok);
        let w = r.witness.unwrap();
        assert_eq!(w.minor, qi(0));
        assert_eq!(w.rows.unwrap().as_slice(), &[1]);
        assert_eq!(w.cols.as_slice(), &[2]);
    }

    #[test]
    fn tp_config_examples() {
        assert_eq!(check_tp_config(&x1_blocks()).unwrap(), TpReport::pass());

        let mut b = x1_blocks().blocks().clone();
        b[0] = b[0].select_cols(&[1, 0]);
        let r = check_tp_config(&ConfigBlocks::new(b).unwrap()).unwrap();
        assert!(!r.ok);
        let w = r.witness.unwrap();
        assert_eq!(w.cols.as_slice(), &[1, 2, 3, 4]);
        assert_eq!(w.minor, qi(-1));

        let mut b = x1_blocks().blocks().clone();
        b[1] = b[0].clone();
        let r = check_tp_config(&ConfigBlocks::new(b).unwrap()).unwrap();
        assert!(!r.ok);
        assert_eq!(r.witness.unwrap().minor, qi(0));
    }

    #[test]
    fn rank_deficient_block_rejected() {
        let mut b = x1_blocks().blocks().clone();
        b[2] = MatQ::from_i64(&[&[1, 2], &[1, 2], &[0, 0], &[3, 6]]).unwrap();
        assert!(matches!(ConfigBlocks::new(b), Err(Error::Input(_))));
    }

    #[test]
    fn canonical_examples() {
        let form = canonicalize(&x1_blocks()).unwrap();
        assert_eq!(form.g, MatQ::identity(4));
        assert_eq!(form.x, x1());
        assert_eq!(form.y, sign_matrix_y());

        let mut b = x1_blocks().blocks().clone();
        b[3] = b[2].clone();
        assert!(matches!(
            canonicalize(&ConfigBlocks::new(b).unwrap()),
            Err(Error::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn canonicalize_rejects_negative_det_g() {
        // swapping the columns of W4 flips det[W3 W4]
        let mut b = x1_blocks().blocks().clone();
        b[3] = b[3].select_cols(&[1, 0]);
        let err = canonicalize(&ConfigBlocks::new(b).unwrap()).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolation { .. }));
    }

    #[test]
    fn random_instances_are_deterministic() {
        let (p0, b0) = random_tp_instance(0, 9).unwrap();
        let (p0b, b0b) = random_tp_instance(0, 9).unwrap();
        assert_eq!((&p0, &b0), (&p0b, &b0b));
        let (p1, _) = random_tp_instance(1, 9).unwrap();
        assert_ne!(p0, p1);
        assert!(check_tp_config(&b0).unwrap().ok);
        assert!(random_tp_instance(0, 0).is_err());
    }

    #[test]
    fn serde_shapes() {
        let b = x1_blocks();
        let s = serde_json::to_string(&b).unwrap();
        assert!(s.starts_with(r#"{"blocks":[[["1","3"],["3","10"],"#));
        assert_eq!(serde_json::from_str::<ConfigBlocks>(&s).unwrap(), b);

        let r = TpReport::fail(Witness {
            rows: None,
            cols: IndexSet::new(vec![1, 2, 3, 4]).unwrap(),
            minor: qi(-1),
        });
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"ok":false,"witness":{"cols":[1,2,3,4],"minor":"-1"}}"#
        );
        assert_eq!(
            serde_json::to_string(&TpReport::pass()).unwrap(),
            r#"{"ok":true,"witness":null}"#
        );

        let p = LwParams::all_ones().with('c', q(3, 7)).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<LwParams>(&s).unwrap(), p);
    }
}
