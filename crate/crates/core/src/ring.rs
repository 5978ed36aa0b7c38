//! The commutative ring of `z`-variables and equality modulo its relations.
//!
//! A variable `z_{e, a-2x}` is stored as the pair (entry e, integer offset x);
//! the symbolic baseline `a` is never materialized.  Equality in the quotient
//! ring is decided through a specialization into Laurent monomials in
//! variables `u_{i,s}` (i = 1..n, s an integer) which collapses every
//! generating relation to the identity:
//!
//! * `z_{i, a-2x}      -> u_{i,x}` for unbarred i,
//! * `z_{ibar, a-2s}   -> prod_{k=1..i} u_{k-1, s-n+k} * u_{k, s-n+k}^{-1}`,
//!   with `u_{0,.} = 1`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entry::Entry;

/// A single generator `z_{entry, a-2*offset}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ZVariable {
    pub entry: Entry,
    pub offset: i32,
}

impl ZVariable {
    pub fn new(entry: Entry, offset: i32) -> Self {
        ZVariable { entry, offset }
    }

    fn sort_key(&self) -> (u8, u8, i32) {
        let (b, i) = self.entry.sort_key();
        (b, i, self.offset)
    }
}

impl fmt::Display for ZVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.offset {
            0 => write!(f, "z[{};a]", self.entry),
            x if x > 0 => write!(f, "z[{};a-{}]", self.entry, 2 * x),
            x => write!(f, "z[{};a+{}]", self.entry, -2 * x),
        }
    }
}

/// A commutative monomial in the `z`-variables: sorted factor list with
/// positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ZMonomial {
    factors: Vec<(ZVariable, u32)>,
}

impl ZMonomial {
    pub fn one() -> Self {
        ZMonomial::default()
    }

    pub fn var(v: ZVariable) -> Self {
        ZMonomial {
            factors: vec![(v, 1)],
        }
    }

    pub fn from_vars(vars: impl IntoIterator<Item = ZVariable>) -> Self {
        let mut m = ZMonomial::one();
        for v in vars {
            m = m.mul_var(v);
        }
        m
    }

    pub fn factors(&self) -> &[(ZVariable, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul_var(&self, v: ZVariable) -> ZMonomial {
        let mut map: BTreeMap<(u8, u8, i32), (ZVariable, u32)> = self
            .factors
            .iter()
            .map(|&(w, e)| (w.sort_key(), (w, e)))
            .collect();
        map.entry(v.sort_key())
            .and_modify(|p| p.1 += 1)
            .or_insert((v, 1));
        ZMonomial {
            factors: map.into_values().collect(),
        }
    }

    pub fn mul(&self, other: &ZMonomial) -> ZMonomial {
        let mut map: BTreeMap<(u8, u8, i32), (ZVariable, u32)> = self
            .factors
            .iter()
            .map(|&(w, e)| (w.sort_key(), (w, e)))
            .collect();
        for &(v, e) in &other.factors {
            map.entry(v.sort_key())
                .and_modify(|p| p.1 += e)
                .or_insert((v, e));
        }
        ZMonomial {
            factors: map.into_values().collect(),
        }
    }

    /// Add `k` to every variable offset (the series shift rule).
    pub fn shift(&self, k: i32) -> ZMonomial {
        let factors = self
            .factors
            .iter()
            .map(|&(v, e)| (ZVariable::new(v.entry, v.offset + k), e))
            .collect();
        ZMonomial { factors }
    }

    /// Specialization into a `u`-Laurent monomial; multiplicative.
    pub fn specialize(&self, n: u8) -> UMonomial {
        let mut u = UMonomial::one();
        for &(v, e) in &self.factors {
            let img = specialize_var(v, n);
            u = u.mul(&img.pow(e as i32));
        }
        u
    }
}

impl fmt::Display for ZMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn specialize_var(v: ZVariable, n: u8) -> UMonomial {
    match v.entry {
        Entry::Unbarred(i) => UMonomial::var(i, v.offset, 1),
        Entry::Barred(i) => {
            let s = v.offset;
            let mut u = UMonomial::one();
            for k in 1..=i {
                let t = s - n as i32 + k as i32;
                if k > 1 {
                    u = u.mul(&UMonomial::var(k - 1, t, 1));
                }
                u = u.mul(&UMonomial::var(k, t, -1));
            }
            u
        }
    }
}

/// A Laurent monomial in the `u_{i,s}` variables (the normal form of a
/// `z`-monomial under the relations).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct UMonomial {
    exps: BTreeMap<(u8, i32), i32>,
}

impl UMonomial {
    pub fn one() -> Self {
        UMonomial::default()
    }

    pub fn var(i: u8, s: i32, e: i32) -> Self {
        let mut m = UMonomial::one();
        if e != 0 {
            m.exps.insert((i, s), e);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &BTreeMap<(u8, i32), i32> {
        &self.exps
    }

    pub fn mul(&self, other: &UMonomial) -> UMonomial {
        let mut exps = self.exps.clone();
        for (&k, &e) in &other.exps {
            let v = exps.entry(k).or_insert(0);
            *v += e;
            if *v == 0 {
                exps.remove(&k);
            }
        }
        UMonomial { exps }
    }

    pub fn pow(&self, e: i32) -> UMonomial {
        if e == 0 {
            return UMonomial::one();
        }
        let exps = self
            .exps
            .iter()
            .map(|(&k, &x)| (k, x * e))
            .collect();
        UMonomial { exps }
    }
}

/// An integer-coefficient polynomial in the `z`-variables.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZPolynomial {
    terms: BTreeMap<ZMonomial, i64>,
}

impl ZPolynomial {
    pub fn zero() -> Self {
        ZPolynomial::default()
    }

    pub fn one() -> Self {
        ZPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        let mut p = ZPolynomial::zero();
        p.add_term(ZMonomial::one(), c);
        p
    }

    pub fn monomial(m: ZMonomial, c: i64) -> Self {
        let mut p = ZPolynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: ZVariable) -> Self {
        ZPolynomial::monomial(ZMonomial::var(v), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<ZMonomial, i64> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: ZMonomial, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(m.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> ZPolynomial {
        ZPolynomial::zero().sub(self)
    }

    pub fn scale(&self, c: i64) -> ZPolynomial {
        let mut out = ZPolynomial::zero();
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = ZPolynomial::zero();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Add `k` to every offset in every term.
    pub fn shift(&self, k: i32) -> ZPolynomial {
        let mut out = ZPolynomial::zero();
        for (m, &c) in &self.terms {
            out.add_term(m.shift(k), c);
        }
        out
    }

    /// The image under the specialization, as a `u`-Laurent polynomial.
    pub fn specialize(&self, n: u8) -> BTreeMap<UMonomial, i64> {
        let mut out: BTreeMap<UMonomial, i64> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let u = m.specialize(n);
            let v = out.entry(u.clone()).or_insert(0);
            *v += c;
            if *v == 0 {
                out.remove(&u);
            }
        }
        out
    }
}

impl fmt::Display for ZPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in &self.terms {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ac = c.unsigned_abs();
            if m.is_one() {
                write!(f, "{ac}")?;
            } else if ac == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{ac}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Equality in the quotient ring: compare specializations exactly, then
/// cross-check with seeded random modular evaluations of the `u`-images.
pub fn eq_in_z(p: &ZPolynomial, q: &ZPolynomial, n: u8) -> bool {
    let sp = p.specialize(n);
    let sq = q.specialize(n);
    let exact = sp == sq;
    // Belt-and-suspenders: evaluate both u-images at random positive values
    // modulo a large prime; must agree with the exact verdict's direction
    // (equal images always evaluate equal; we only assert that direction).
    if exact {
        debug_assert!(random_eval_agrees(&sp, &sq, 3, 0xD1_5EED));
    }
    exact
}

const P: u64 = (1 << 61) - 1;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut bb: u128 = b as u128 % P as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % P as u128;
        }
        bb = bb * bb % P as u128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

fn inv_mod(x: u64) -> u64 {
    pow_mod(x, P - 2)
}

fn eval_mod(poly: &BTreeMap<UMonomial, i64>, assign: &BTreeMap<(u8, i32), u64>) -> u64 {
    let mut total: u128 = 0;
    for (m, &c) in poly {
        let mut term: u128 = c.rem_euclid(P as i64) as u128;
        for (&k, &e) in m.exps() {
            let base = assign[&k];
            let val = if e >= 0 {
                pow_mod(base, e as u64)
            } else {
                pow_mod(inv_mod(base), (-e) as u64)
            };
            term = term * val as u128 % P as u128;
        }
        total = (total + term) % P as u128;
    }
    total as u64
}

fn random_eval_agrees(
    sp: &BTreeMap<UMonomial, i64>,
    sq: &BTreeMap<UMonomial, i64>,
    rounds: usize,
    seed: u64,
) -> bool {
    let mut vars: std::collections::BTreeSet<(u8, i32)> = Default::default();
    for poly in [sp, sq] {
        for m in poly.keys() {
            vars.extend(m.exps().keys().copied());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..rounds {
        let assign: BTreeMap<(u8, i32), u64> = vars
            .iter()
            .map(|&k| (k, rng.gen_range(2..P - 1)))
            .collect();
        if eval_mod(sp, &assign) != eval_mod(sq, &assign) {
            return false;
        }
    }
    true
}

// --- JSON form -------------------------------------------------------------

#[derive(Clone, Serialize, Deserialize)]
struct JsonFactor {
    entry: Entry,
    offset: i32,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: i64,
    monomial: Vec<JsonFactor>,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    terms: Vec<JsonTerm>,
}

impl ZPolynomial {
    /// Canonical JSON form: factors sorted by (entry, offset), terms sorted
    /// lexicographically by monomial.
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| JsonTerm {
                coeff: c,
                monomial: m
                    .factors()
                    .iter()
                    .flat_map(|&(v, e)| {
                        std::iter::repeat(JsonFactor {
                            entry: v.entry,
                            offset: v.offset,
                        })
                        .take(e as usize)
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(JsonPoly { terms }).expect("serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ZPolynomial, crate::error::Error> {
        let jp: JsonPoly = serde_json::from_value(v.clone())
            .map_err(|e| crate::error::Error::Parse(e.to_string()))?;
        let mut p = ZPolynomial::zero();
        for t in jp.terms {
            let m = ZMonomial::from_vars(
                t.monomial
                    .into_iter()
                    .map(|f| ZVariable::new(f.entry, f.offset)),
            );
            p.add_term(m, t.coeff);
        }
        Ok(p)
    }
}
