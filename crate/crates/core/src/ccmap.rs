//! Laurent polynomials and the 2-cyclic Caldero-Chapoton map
//! `CC(M) = (Σ_e χ(Gr_e M)) · x^{-g_M}`.
//!
//! ```
//! use qpcat::ccmap::LaurentPoly;
//! let a: LaurentPoly = "2*x2/x1".parse().unwrap();
//! let b: LaurentPoly = "3*x1/x2".parse().unwrap();
//! assert_eq!((&a * &b).to_string(), "6");
//! assert_eq!(a.to_string(), "2*x2/x1");
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{fmt_q, parse_q, q, Q};
use crate::error::{Error, Result};
use crate::repmod::{case_model, catalog_names, g_vector, grass_counts, is_tau_rigid, catalog_module, CaseId, CountOptions, GVector, Representation};

/// A Laurent polynomial in `x_1, …, x_n` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(q(1), vec![0; n])
    }

    /// `c · x^a`.
    pub fn monomial(c: Q, a: Vec<i64>) -> Self {
        let mut p = Self::zero(a.len());
        if !c.is_zero() {
            p.terms.insert(a, c);
        }
        p
    }

    /// `x_i` with 1-based index.
    pub fn var(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i - 1] = 1;
        Self::monomial(q(1), a)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient and exponent when there is exactly one term.
    pub fn as_monomial(&self) -> Option<(&Q, &[i64])> {
        match self.terms.iter().next() {
            Some((a, c)) if self.terms.len() == 1 => Some((c, a)),
            _ => None,
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n == o.n {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("Laurent polynomials in {} and {} variables", self.n, o.n)))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (a, c) in &o.terms {
            let e = out.terms.entry(a.clone()).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(a);
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let e: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out = out.try_add(&Self::monomial(c * d, e))?;
            }
        }
        Ok(out)
    }

    /// Parses with a fixed number of variables.
    pub fn parse_in(s: &str, n: usize) -> Result<Self> {
        let p: LaurentPoly = s.parse()?;
        if p.terms.keys().any(|a| a[n.min(a.len())..].iter().any(|&x| x != 0)) {
            return Err(Error::InvalidParameters(format!("{s:?} uses more than {n} variables")));
        }
        let terms = p
            .terms
            .into_iter()
            .map(|(mut a, c)| {
                a.resize(n, 0);
                (a, c)
            })
            .collect();
        Ok(LaurentPoly { n, terms })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_add(o).expect("same number of variables")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_mul(o).expect("same number of variables")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { n: self.n, terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect() }
    }
}

fn factors(a: &[i64], sign: i64) -> Vec<String> {
    a.iter()
        .enumerate()
        .filter(|(_, &e)| e * sign > 0)
        .map(|(i, &e)| if e * sign == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e * sign) })
        .collect()
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            let num = factors(a, 1);
            let den = factors(a, -1);
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mut head = Vec::new();
            if !mag.is_one() || num.is_empty() {
                head.push(fmt_q(&mag));
            }
            head.extend(num);
            f.write_str(&head.join("*"))?;
            match den.len() {
                0 => {}
                1 => write!(f, "/{}", den[0])?,
                _ => write!(f, "/({})", den.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { line: 1, msg: format!("{msg} at column {}", self.i + 1) })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.s.get(self.i) == Some(&b' ') {
            self.i += 1;
        }
        self.s.get(self.i).copied()
    }

    fn number(&mut self) -> String {
        let start = self.i;
        while self.s.get(self.i).is_some_and(u8::is_ascii_digit) {
            self.i += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.i]).into_owned()
    }

    /// A product of atoms, as coefficient and exponent map.
    fn product(&mut self) -> Result<(Q, BTreeMap<usize, i64>)> {
        let (mut c, mut e) = self.atom()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            let (d, f) = self.atom()?;
            c *= d;
            for (k, v) in f {
                *e.entry(k).or_insert(0) += v;
            }
        }
        Ok((c, e))
    }

    fn atom(&mut self) -> Result<(Q, BTreeMap<usize, i64>)> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let r = self.product()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(r)
            }
            Some(b'x') => {
                self.i += 1;
                let idx: usize = match self.number().parse() {
                    Ok(k) if k >= 1 => k,
                    _ => return self.err("expected a variable index >= 1"),
                };
                let mut pw = 1;
                if self.peek() == Some(b'^') {
                    self.i += 1;
                    let neg = self.peek() == Some(b'-');
                    if neg {
                        self.i += 1;
                    }
                    pw = match self.number().parse::<i64>() {
                        Ok(k) => if neg { -k } else { k },
                        Err(_) => return self.err("expected an exponent"),
                    };
                }
                Ok((q(1), BTreeMap::from([(idx - 1, pw)])))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.number();
                Ok((parse_q(&num).expect("digits"), BTreeMap::new()))
            }
            _ => self.err("expected a number, a variable or '('"),
        }
    }

    fn term(&mut self) -> Result<(Q, BTreeMap<usize, i64>)> {
        let (mut c, mut e) = self.product()?;
        while self.peek() == Some(b'/') {
            self.i += 1;
            let (d, f) = self.atom()?;
            if d.is_zero() {
                return self.err("division by zero");
            }
            c /= d;
            for (k, v) in f {
                *e.entry(k).or_insert(0) -= v;
            }
        }
        Ok((c, e))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Sums of terms `c*x1*x2^2/(x3*x4)`; the number of variables is the largest index used.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let mut raw = Vec::new();
        let mut sign = Q::one();
        if p.peek() == Some(b'-') {
            p.i += 1;
            sign = -sign;
        }
        loop {
            let (c, e) = p.term()?;
            raw.push((&sign * c, e));
            match p.peek() {
                None => break,
                Some(b'+') => sign = Q::one(),
                Some(b'-') => sign = -Q::one(),
                Some(_) => return p.err("expected '+' or '-'"),
            }
            p.i += 1;
        }
        let n = raw.iter().flat_map(|(_, e)| e.keys().map(|k| k + 1)).max().unwrap_or(0);
        let mut out = LaurentPoly::zero(n);
        for (c, e) in raw {
            let mut a = vec![0; n];
            for (k, v) in e {
                a[k] = v;
            }
            out = &out + &LaurentPoly::monomial(c, a);
        }
        Ok(out)
    }
}

/// `(Σ_e χ(Gr_e M)) · x^{-g_M}`.
///
/// ```
/// use qpcat::ccmap::cc;
/// use qpcat::repmod::{case_model, catalog_module, CaseId, CountOptions};
/// let model = case_model(CaseId::A2Empty).unwrap();
/// let s1 = catalog_module(&model, CaseId::A2Empty, "S1").unwrap();
/// assert_eq!(cc(&s1, &CountOptions::default()).unwrap().to_string(), "2*x2/x1");
/// ```
pub fn cc(m: &Representation, opts: &CountOptions) -> Result<LaurentPoly> {
    Ok(cc_detail(m, opts)?.value)
}

/// The ingredients of one CC value.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CcDetail {
    pub g_vector: GVector,
    /// `(e, χ(Gr_e M))` for every nonempty Grassmannian.
    pub euler: Vec<(Vec<usize>, i64)>,
    pub chi_sum: i64,
    pub value: LaurentPoly,
}

pub fn cc_detail(m: &Representation, opts: &CountOptions) -> Result<CcDetail> {
    let g = g_vector(m)?;
    let counts = grass_counts(m, opts)?;
    let euler: Vec<(Vec<usize>, i64)> = counts.into_iter().filter(|c| c.euler != 0).map(|c| (c.e, c.euler)).collect();
    let chi_sum = euler.iter().map(|(_, x)| x).sum();
    let value = LaurentPoly::monomial(q(chi_sum), g.0.iter().map(|x| -x).collect());
    Ok(CcDetail { g_vector: g, euler, chi_sum, value })
}

/// The published CC value and g-vector of one catalog module.
#[derive(Debug, Clone, Copy)]
pub struct ListedValue {
    pub name: &'static str,
    /// The CC value in the case's displayed list of CC values.
    pub cc: &'static str,
    pub g: &'static [i64],
}

/// Published CC values and g-vectors per case.
pub fn listed_values(case: CaseId) -> &'static [ListedValue] {
    const A2: &[ListedValue] = &[
        ListedValue { name: "S1", cc: "2*x2/x1", g: &[1, -1] },
        ListedValue { name: "S2", cc: "2*x1/x2", g: &[-1, 1] },
        ListedValue { name: "P1", cc: "6/x1", g: &[1, 0] },
        ListedValue { name: "P2", cc: "6/x2", g: &[0, 1] },
    ];
    const A2_12: &[ListedValue] = &[
        ListedValue { name: "E1", cc: "3*x2/x1", g: &[1, -1] },
        ListedValue { name: "E2", cc: "3*x1/x2", g: &[-1, 1] },
        ListedValue { name: "P1", cc: "9/x1", g: &[1, 0] },
        ListedValue { name: "P2", cc: "9/x2", g: &[0, 1] },
    ];
    const A3: &[ListedValue] = &[
        ListedValue { name: "S1", cc: "2*x2/x1", g: &[1, -1, 0] },
        ListedValue { name: "S2", cc: "2*x1*x3/x2", g: &[-1, 1, -1] },
        ListedValue { name: "S3", cc: "2*x2/x3", g: &[0, -1, 1] },
        ListedValue { name: "M_[0,3,2]", cc: "6*x1/x2", g: &[-1, 1, 0] },
        ListedValue { name: "M_[2,3,0]", cc: "6*x3/x2", g: &[0, 1, -1] },
        ListedValue { name: "M_[3,2,0]", cc: "6*x3/x1", g: &[1, 0, -1] },
        ListedValue { name: "M_[0,2,3]", cc: "6*x2/x3", g: &[-1, 0, 1] },
        ListedValue { name: "M_[2,1,2]", cc: "8*x2/(x1*x3)", g: &[1, -1, 1] },
        ListedValue { name: "P1", cc: "12/x1", g: &[1, 0, 0] },
        ListedValue { name: "P2", cc: "12/x2", g: &[0, 1, 0] },
        ListedValue { name: "P3", cc: "36/x3", g: &[0, 0, 1] },
    ];
    match case {
        CaseId::A2Empty => A2,
        CaseId::A2Twelve(_) => A2_12,
        CaseId::A3Empty => A3,
    }
}

/// The non-initial generators listed for the case's cluster algebra.
pub fn listed_generators(case: CaseId) -> &'static [&'static str] {
    match case {
        CaseId::A2Empty => &["2*x2/x1", "2*x1/x2", "6/x1", "6/x2"],
        CaseId::A2Twelve(_) => &["3*x2/x1", "3*x1/x2", "9/x1", "9/x2"],
        CaseId::A3Empty => &[
            "2*x2/x1",
            "2*x1/x2",
            "2*x1*x3/x2",
            "6*x1/x3",
            "6*x1/x2",
            "6*x3/x2",
            "6*x3/x1",
            "8*x2/(x1*x3)",
            "12/x1",
            "12/x3",
            "36/x2",
        ],
    }
}

/// Catalog modules whose listed CC value is taken as golden; the rest are
/// decided by computation because the case's two published lists disagree.
pub fn asserted_names(case: CaseId) -> &'static [&'static str] {
    match case {
        CaseId::A3Empty => &["S1", "S2", "M_[2,1,2]"],
        _ => catalog_names(case),
    }
}

/// One catalog module in a [`CaseReport`].
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModuleReport {
    pub name: String,
    pub dims: Vec<usize>,
    pub g_vector: GVector,
    pub listed_g_vector: Vec<i64>,
    pub g_matches_list: bool,
    pub tau_rigid: bool,
    pub euler: Vec<(Vec<usize>, i64)>,
    pub chi_sum: i64,
    pub cc: LaurentPoly,
    /// The value in the published list of CC values.
    pub listed_cc: LaurentPoly,
    pub matches_cc_list: bool,
    pub in_generator_list: bool,
    /// The listed value is golden for this module.
    pub asserted: bool,
}

/// Verification of one case against both published lists.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseReport {
    pub case: String,
    pub potential: String,
    pub jacobian_dim: usize,
    pub modules: Vec<ModuleReport>,
    pub generator_list: Vec<LaurentPoly>,
    /// Listed generators no catalog module produces.
    pub unmatched_generators: Vec<LaurentPoly>,
    pub all_tau_rigid: bool,
    pub distinct: bool,
    /// Every CC value equals its listed value and the values are exactly the generator list.
    pub all_matched: bool,
    /// All modules are τ-rigid with distinct values, and every asserted value matches.
    pub passed: bool,
    pub discrepancies: Vec<String>,
}

/// Builds the case's model and catalog, computes every CC value and compares.
pub fn verify_case(case: CaseId, opts: &CountOptions) -> Result<CaseReport> {
    let model = case_model(case)?;
    let n = model.quiver().num_vertices();
    let listed = listed_values(case);
    let generator_list: Vec<LaurentPoly> =
        listed_generators(case).iter().map(|s| LaurentPoly::parse_in(s, n)).collect::<Result<_>>()?;
    let modules: Vec<ModuleReport> = catalog_names(case)
        .par_iter()
        .map(|&name| {
            let m = catalog_module(&model, case, name)?;
            let d = cc_detail(&m, opts)?;
            let pv = listed.iter().find(|p| p.name == name).expect("every catalog module has a listed value");
            let listed_cc = LaurentPoly::parse_in(pv.cc, n)?;
            Ok(ModuleReport {
                name: name.to_string(),
                dims: m.dims().to_vec(),
                g_matches_list: d.g_vector.0 == pv.g,
                g_vector: d.g_vector,
                listed_g_vector: pv.g.to_vec(),
                tau_rigid: is_tau_rigid(&m)?,
                euler: d.euler,
                chi_sum: d.chi_sum,
                matches_cc_list: d.value == listed_cc,
                in_generator_list: generator_list.contains(&d.value),
                asserted: asserted_names(case).contains(&name),
                cc: d.value,
                listed_cc,
            })
        })
        .collect::<Result<_>>()?;
    let mut discrepancies = Vec::new();
    for m in &modules {
        if !m.matches_cc_list {
            discrepancies.push(format!("CC({}) = {} but the CC list gives {}", m.name, m.cc, m.listed_cc));
        }
        if !m.in_generator_list {
            discrepancies.push(format!("CC({}) = {} is not in the generator list", m.name, m.cc));
        }
        if !m.g_matches_list {
            discrepancies.push(format!("g({}) = {:?} but the list gives {:?}", m.name, m.g_vector.0, m.listed_g_vector));
        }
        if !m.tau_rigid {
            discrepancies.push(format!("{} is not tau-rigid", m.name));
        }
    }
    let unmatched_generators: Vec<LaurentPoly> =
        generator_list.iter().filter(|g| !modules.iter().any(|m| &m.cc == *g)).cloned().collect();
    for g in &unmatched_generators {
        discrepancies.push(format!("listed generator {g} is not the CC value of any catalog module"));
    }
    let values: Vec<&LaurentPoly> = modules.iter().map(|m| &m.cc).collect();
    let distinct = values.iter().enumerate().all(|(i, v)| !values[..i].contains(v));
    let all_matched = discrepancies.is_empty() && distinct;
    let all_tau_rigid = modules.iter().all(|m| m.tau_rigid);
    let passed = all_tau_rigid && distinct && modules.iter().all(|m| !m.asserted || (m.matches_cc_list && m.g_matches_list));
    Ok(CaseReport {
        case: case.id().to_string(),
        potential: model.qp().potential.to_string(),
        jacobian_dim: model.dim().unwrap_or(0),
        all_tau_rigid,
        modules,
        generator_list,
        unmatched_generators,
        distinct,
        all_matched,
        passed,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_printing() {
        let a = LaurentPoly::monomial(q(1), vec![1, -1]);
        let b = LaurentPoly::monomial(q(1), vec![-1, 1]);
        assert_eq!(&a * &b, LaurentPoly::one(2));
        let p: LaurentPoly = "8*x2/(x1*x3)".parse().unwrap();
        assert_eq!(p.as_monomial().unwrap().1, &[-1, 1, -1]);
        assert_eq!(p.to_string(), "8*x2/(x1*x3)");
        let s: LaurentPoly = "x1 - 2*x2^2/x1 + 1".parse().unwrap();
        assert_eq!(s.to_string().parse::<LaurentPoly>().unwrap(), s);
        assert!((&s + &-&s).is_zero());
    }

    #[test]
    fn parse_errors() {
        assert!("2*".parse::<LaurentPoly>().is_err());
        assert!("x0".parse::<LaurentPoly>().is_err());
        assert!("1/0".parse::<LaurentPoly>().is_err());
        assert!(LaurentPoly::parse_in("x3", 2).is_err());
        assert!(LaurentPoly::one(2).try_mul(&LaurentPoly::one(3)).is_err());
    }
}
