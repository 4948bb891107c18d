//! Torus localization on towers of Grassmann bundles over `V₉`.
//!
//! A tower is a list of steps `X` of dimension `d` with `L ⊂ X ⊂ U`, where
//! `L` and `U` are built from fixed coordinate subspaces and earlier steps.
//! The diagonal torus with characters `t₁…t₉` acts with isolated fixed points:
//! every step is a coordinate subspace. Bundles are evaluated at fixed points
//! as virtual sums of characters, and integrals are sums of equivariant
//! integrands over the Euler class of the tangent space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trivector::{IndexSubspace, MonomialSet, TrivectorExpr, N};

pub const MAX_TORUS_RETRIES: usize = 20;
const TORUS_RANGE: i64 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizeError {
    #[error("cannot parse subspace expression {0:?}")]
    Parse(String),
    #[error("unknown subspace {0:?}")]
    UnknownSpace(String),
    #[error("duplicate subspace name {0:?}")]
    DuplicateName(String),
    #[error("step {step}: lower bound is not contained in upper bound, or dimension {dim} is out of range")]
    BadStep { step: String, dim: usize },
    #[error("step {0}: bounds change dimension between fixed points, so the step is not a Grassmann bundle")]
    NotABundle(String),
    #[error("factor {factor}: rank varies between fixed points ({first} vs {other})")]
    NonConstantRank { factor: usize, first: i64, other: i64 },
    #[error("integrand has degree {integrand} but the tower has dimension {tower}")]
    DegreeMismatch { integrand: usize, tower: usize },
    #[error("exterior power of negative degree")]
    NegativeRank,
    #[error("no admissible torus values after {0} attempts")]
    DegenerateTorus(usize),
    #[error("two torus samples disagree: {first} vs {second}")]
    SampleDisagreement { first: String, second: String },
    #[error("integral is not an integer: {0}")]
    NonIntegral(String),
    #[error("unknown scene {0:?}")]
    UnknownScene(String),
}

/// Integer linear form in `t₁…t₉`.
pub type Character = [i32; N];

pub fn basic_character(i: usize) -> Character {
    let mut c = [0; N];
    c[i - 1] = 1;
    c
}

pub fn character_string(c: &Character) -> String {
    let mut s = String::new();
    let order = c.iter().enumerate().filter(|(_, &k)| k > 0).chain(c.iter().enumerate().filter(|(_, &k)| k < 0));
    for (i, &k) in order {
        let sign = if k < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = k.unsigned_abs();
        if mag == 1 {
            s.push_str(&format!("{sign}t{}", i + 1));
        } else {
            s.push_str(&format!("{sign}{mag}t{}", i + 1));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn add_chars(a: &Character, b: &Character) -> Character {
    let mut c = *a;
    for i in 0..N {
        c[i] += b[i];
    }
    c
}

fn scale_char(a: &Character, k: i32) -> Character {
    a.map(|x| x * k)
}

/// A virtual torus representation: characters with signed multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualCharacter(BTreeMap<Character, i64>);

impl VirtualCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_characters<I: IntoIterator<Item = Character>>(it: I) -> Self {
        let mut v = Self::zero();
        for c in it {
            v.add_term(c, 1);
        }
        v
    }

    pub fn add_term(&mut self, c: Character, m: i64) {
        let e = self.0.entry(c).or_insert(0);
        *e += m;
        if *e == 0 {
            self.0.remove(&c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Character, &i64)> {
        self.0.iter()
    }

    pub fn rank(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.values().all(|&m| m > 0)
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut v = self.clone();
        for (c, &m) in &o.0 {
            v.add_term(*c, m);
        }
        v
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut v = Self::zero();
        for (c, &m) in &self.0 {
            v.add_term(*c, m * k);
        }
        v
    }

    pub fn dual(&self) -> Self {
        let mut v = Self::zero();
        for (c, &m) in &self.0 {
            v.add_term(scale_char(c, -1), m);
        }
        v
    }

    pub fn tensor(&self, o: &Self) -> Self {
        let mut v = Self::zero();
        for (a, &m) in &self.0 {
            for (b, &n) in &o.0 {
                v.add_term(add_chars(a, b), m * n);
            }
        }
        v
    }

    pub fn det(&self) -> Self {
        let mut c = [0; N];
        for (a, &m) in &self.0 {
            c = add_chars(&c, &scale_char(a, m as i32));
        }
        Self::from_characters([c])
    }

    /// `λ^k` via `Π (1 + y·e^w)^{m_w}`.
    pub fn wedge(&self, k: usize) -> Self {
        let mut poly: Vec<VirtualCharacter> = vec![Self::zero(); k + 1];
        poly[0].add_term([0; N], 1);
        for (w, &m) in &self.0 {
            let factor = lambda_series(w, m, k);
            let mut next = vec![Self::zero(); k + 1];
            for (i, p) in poly.iter().enumerate() {
                for (j, f) in factor.iter().enumerate().take(k + 1 - i) {
                    next[i + j] = next[i + j].plus(&p.tensor(f));
                }
            }
            poly = next;
        }
        poly.swap_remove(k)
    }

    pub fn to_strings(&self) -> Vec<(String, i64)> {
        self.0.iter().map(|(c, &m)| (character_string(c), m)).collect()
    }
}

/// Coefficients of `(1 + y·e^w)^m` up to `y^k`.
fn lambda_series(w: &Character, m: i64, k: usize) -> Vec<VirtualCharacter> {
    (0..=k)
        .map(|j| {
            let coeff = generalized_binomial(m, j as i64);
            let mut v = VirtualCharacter::zero();
            if coeff != 0 {
                v.add_term(scale_char(w, j as i32), coeff);
            }
            v
        })
        .collect()
}

fn generalized_binomial(m: i64, j: i64) -> i64 {
    let mut num: i64 = 1;
    let mut den: i64 = 1;
    for i in 0..j {
        num *= m - i;
        den *= i + 1;
    }
    num / den
}

/// A subspace built from named subspaces by sums and intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceExpr {
    Name(String),
    Sum(Box<SpaceExpr>, Box<SpaceExpr>),
    Meet(Box<SpaceExpr>, Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn name(s: &str) -> Self {
        SpaceExpr::Name(s.to_string())
    }

    /// `a+b` is the sum, `a&b` the intersection (binding tighter), with parentheses.
    pub fn parse(s: &str) -> Result<Self, LocalizeError> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let e = parse_sum(&toks, &mut pos).ok_or_else(|| LocalizeError::Parse(s.into()))?;
        if pos != toks.len() {
            return Err(LocalizeError::Parse(s.into()));
        }
        Ok(e)
    }

    pub fn names(&self, out: &mut BTreeSet<String>) {
        match self {
            SpaceExpr::Name(n) => {
                out.insert(n.clone());
            }
            SpaceExpr::Sum(a, b) | SpaceExpr::Meet(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }

    pub fn eval(&self, env: &Env) -> Result<IndexSubspace, LocalizeError> {
        Ok(match self {
            SpaceExpr::Name(n) => env.get(n)?,
            SpaceExpr::Sum(a, b) => a.eval(env)?.sum(&b.eval(env)?),
            SpaceExpr::Meet(a, b) => a.eval(env)?.meet(&b.eval(env)?),
        })
    }
}

fn parse_sum(t: &[char], pos: &mut usize) -> Option<SpaceExpr> {
    let mut e = parse_meet(t, pos)?;
    while t.get(*pos) == Some(&'+') {
        *pos += 1;
        e = SpaceExpr::Sum(Box::new(e), Box::new(parse_meet(t, pos)?));
    }
    Some(e)
}

fn parse_meet(t: &[char], pos: &mut usize) -> Option<SpaceExpr> {
    let mut e = parse_atom(t, pos)?;
    while t.get(*pos) == Some(&'&') {
        *pos += 1;
        e = SpaceExpr::Meet(Box::new(e), Box::new(parse_atom(t, pos)?));
    }
    Some(e)
}

fn parse_atom(t: &[char], pos: &mut usize) -> Option<SpaceExpr> {
    if t.get(*pos) == Some(&'(') {
        *pos += 1;
        let e = parse_sum(t, pos)?;
        if t.get(*pos) != Some(&')') {
            return None;
        }
        *pos += 1;
        return Some(e);
    }
    let start = *pos;
    while t.get(*pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
        *pos += 1;
    }
    (start < *pos).then(|| SpaceExpr::Name(t[start..*pos].iter().collect()))
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Name(n) => write!(f, "{n}"),
            SpaceExpr::Sum(a, b) => write!(f, "{a}+{b}"),
            SpaceExpr::Meet(a, b) => {
                let wrap = |e: &SpaceExpr| match e {
                    SpaceExpr::Sum(..) => format!("({e})"),
                    _ => e.to_string(),
                };
                write!(f, "{}&{}", wrap(a), wrap(b))
            }
        }
    }
}

impl Serialize for SpaceExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SpaceExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SpaceExpr::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Values of named subspaces at one fixed point; `V` and `0` are built in.
pub struct Env<'a> {
    fixed: &'a BTreeMap<String, IndexSubspace>,
    names: &'a [String],
    values: &'a [IndexSubspace],
}

impl Env<'_> {
    pub fn get(&self, n: &str) -> Result<IndexSubspace, LocalizeError> {
        match n {
            "V" => return Ok(IndexSubspace::full()),
            "0" => return Ok(IndexSubspace::zero()),
            _ => {}
        }
        if let Some(s) = self.fixed.get(n) {
            return Ok(*s);
        }
        self.names
            .iter()
            .position(|x| x == n)
            .and_then(|i| self.values.get(i).copied())
            .ok_or_else(|| LocalizeError::UnknownSpace(n.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub dim: usize,
    pub lower: SpaceExpr,
    pub upper: SpaceExpr,
}

impl Step {
    pub fn new(name: &str, dim: usize, lower: &str, upper: &str) -> Self {
        Step {
            name: name.into(),
            dim,
            lower: SpaceExpr::parse(lower).expect("valid expression"),
            upper: SpaceExpr::parse(upper).expect("valid expression"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    #[serde(default)]
    pub fixed: BTreeMap<String, IndexSubspace>,
    pub steps: Vec<Step>,
}

/// One torus-fixed point: a coordinate subspace for every step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub subspaces: Vec<IndexSubspace>,
}

impl Tower {
    pub fn new(steps: Vec<Step>) -> Self {
        Tower { fixed: BTreeMap::new(), steps }
    }

    /// Partial flag `d₁ < … < d_r` named `U{d}`, built from the largest piece down.
    pub fn flag_variety(dims: &[usize]) -> Self {
        let mut steps = Vec::new();
        let mut upper = "V".to_string();
        for &d in dims.iter().rev() {
            let name = format!("U{d}");
            steps.push(Step::new(&name, d, "0", &upper));
            upper = name;
        }
        Tower { fixed: BTreeMap::new(), steps }
    }

    pub fn with_fixed(mut self, name: &str, s: IndexSubspace) -> Self {
        self.fixed.insert(name.into(), s);
        self
    }

    pub fn then(mut self, step: Step) -> Self {
        self.steps.push(step);
        self
    }

    fn names(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.name.clone()).collect()
    }

    pub fn env<'a>(&'a self, names: &'a [String], fp: &'a FixedPoint) -> Env<'a> {
        Env { fixed: &self.fixed, names, values: &fp.subspaces }
    }

    pub fn validate(&self) -> Result<(), LocalizeError> {
        let mut known: BTreeSet<String> = ["V", "0"].iter().map(|s| s.to_string()).collect();
        for n in self.fixed.keys() {
            if !known.insert(n.clone()) {
                return Err(LocalizeError::DuplicateName(n.clone()));
            }
        }
        for s in &self.steps {
            let mut used = BTreeSet::new();
            s.lower.names(&mut used);
            s.upper.names(&mut used);
            if let Some(u) = used.iter().find(|u| !known.contains(*u)) {
                return Err(LocalizeError::UnknownSpace(u.clone()));
            }
            if !known.insert(s.name.clone()) {
                return Err(LocalizeError::DuplicateName(s.name.clone()));
            }
        }
        Ok(())
    }

    /// `Σ (d − dim L)(dim U − d)`, read at the first fixed point.
    pub fn dimension(&self) -> Result<usize, LocalizeError> {
        let pts = enumerate_fixed_points(self)?;
        let names = self.names();
        let env = self.env(&names, &pts[0]);
        let mut total = 0;
        for s in &self.steps {
            let l = s.lower.eval(&env)?.dim();
            let u = s.upper.eval(&env)?.dim();
            total += (s.dim - l) * (u - s.dim);
        }
        Ok(total)
    }

    fn tangent(&self, names: &[String], fp: &FixedPoint) -> Result<Vec<Character>, LocalizeError> {
        let env = self.env(names, fp);
        let mut out = Vec::new();
        for (s, x) in self.steps.iter().zip(&fp.subspaces) {
            let l = s.lower.eval(&env)?;
            let u = s.upper.eval(&env)?;
            for a in x.indices().into_iter().filter(|&a| !l.contains(a)) {
                for b in u.indices().into_iter().filter(|&b| !x.contains(b)) {
                    out.push(add_chars(&basic_character(b), &scale_char(&basic_character(a), -1)));
                }
            }
        }
        Ok(out)
    }
}

pub fn enumerate_fixed_points(t: &Tower) -> Result<Vec<FixedPoint>, LocalizeError> {
    t.validate()?;
    let names = t.names();
    let mut out = Vec::new();
    let mut bounds: Vec<Option<(usize, usize)>> = vec![None; t.steps.len()];
    let mut cur = FixedPoint { subspaces: Vec::new() };
    extend(t, &names, 0, &mut cur, &mut bounds, &mut out)?;
    Ok(out)
}

fn extend(
    t: &Tower,
    names: &[String],
    i: usize,
    cur: &mut FixedPoint,
    bounds: &mut [Option<(usize, usize)>],
    out: &mut Vec<FixedPoint>,
) -> Result<(), LocalizeError> {
    if i == t.steps.len() {
        out.push(cur.clone());
        return Ok(());
    }
    let s = &t.steps[i];
    let env = t.env(names, cur);
    let l = s.lower.eval(&env)?;
    let u = s.upper.eval(&env)?;
    if !l.is_subspace_of(&u) || s.dim < l.dim() || s.dim > u.dim() {
        return Err(LocalizeError::BadStep { step: s.name.clone(), dim: s.dim });
    }
    match bounds[i] {
        None => bounds[i] = Some((l.dim(), u.dim())),
        Some(b) if b != (l.dim(), u.dim()) => return Err(LocalizeError::NotABundle(s.name.clone())),
        _ => {}
    }
    let free: Vec<usize> = u.indices().into_iter().filter(|&a| !l.contains(a)).collect();
    for pick in subsets(&free, s.dim - l.dim()) {
        let x = l.sum(&IndexSubspace::new(&pick).expect("indices in range"));
        cur.subspaces.push(x);
        extend(t, names, i + 1, cur, bounds, out)?;
        cur.subspaces.pop();
    }
    Ok(())
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// `A₁∧A₂∧A₃` with factors given by subspace expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WedgeShape(pub [SpaceExpr; 3]);

fn trivector_at(terms: &[WedgeShape], env: &Env) -> Result<MonomialSet, LocalizeError> {
    let mut e = TrivectorExpr::zero();
    for WedgeShape([a, b, c]) in terms {
        e = e + TrivectorExpr::wedge(a.eval(env)?, b.eval(env)?, c.eval(env)?);
    }
    Ok(e.span())
}

/// `ambient/(ambient ∩ sub)` for monomial subspaces of `∧³V₉`, read at each fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivectorQuotient {
    #[serde(default)]
    pub ambient: Option<Vec<WedgeShape>>,
    pub sub: Vec<WedgeShape>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleExpr {
    Sub(SpaceExpr),
    Quotient(SpaceExpr, SpaceExpr),
    Dual(Box<BundleExpr>),
    Sum(Vec<BundleExpr>),
    Difference(Box<BundleExpr>, Box<BundleExpr>),
    Tensor(Vec<BundleExpr>),
    Det(Box<BundleExpr>),
    Wedge(usize, Box<BundleExpr>),
    Trivector(TrivectorQuotient),
}

impl BundleExpr {
    pub fn sub(s: &str) -> Self {
        BundleExpr::Sub(SpaceExpr::parse(s).expect("valid expression"))
    }

    pub fn quotient(a: &str, b: &str) -> Self {
        BundleExpr::Quotient(SpaceExpr::parse(a).expect("valid expression"), SpaceExpr::parse(b).expect("valid expression"))
    }

    pub fn dual(self) -> Self {
        BundleExpr::Dual(Box::new(self))
    }

    pub fn det(self) -> Self {
        BundleExpr::Det(Box::new(self))
    }

    pub fn minus(self, o: BundleExpr) -> Self {
        BundleExpr::Difference(Box::new(self), Box::new(o))
    }

    /// `c₁(O(1))` on a projectivization step is `c₁` of this line bundle.
    pub fn hyperplane(step: &str) -> Self {
        BundleExpr::sub(step).dual()
    }

    /// `O(1) = det U^∨` on the Grassmannian of the named step.
    pub fn plucker(step: &str) -> Self {
        BundleExpr::sub(step).dual().det()
    }
}

fn shapes(terms: &[[&str; 3]]) -> Vec<WedgeShape> {
    terms
        .iter()
        .map(|t| WedgeShape(t.map(|s| SpaceExpr::parse(s).expect("valid expression"))))
        .collect()
}

impl TrivectorQuotient {
    pub fn new(ambient: Option<&[[&str; 3]]>, sub: &[[&str; 3]]) -> Self {
        TrivectorQuotient { ambient: ambient.map(shapes), sub: shapes(sub) }
    }

    fn monomials(&self, env: &Env) -> Result<MonomialSet, LocalizeError> {
        let ambient = match &self.ambient {
            Some(a) => trivector_at(a, env)?,
            None => MonomialSet::all(),
        };
        Ok(ambient.difference(&trivector_at(&self.sub, env)?))
    }
}

pub fn bundle_weights_at(t: &Tower, fp: &FixedPoint, b: &BundleExpr) -> Result<VirtualCharacter, LocalizeError> {
    let names = t.names();
    weights(&t.env(&names, fp), b)
}

fn weights(env: &Env, b: &BundleExpr) -> Result<VirtualCharacter, LocalizeError> {
    Ok(match b {
        BundleExpr::Sub(s) => VirtualCharacter::from_characters(s.eval(env)?.indices().into_iter().map(basic_character)),
        BundleExpr::Quotient(a, s) => {
            let (a, s) = (a.eval(env)?, s.eval(env)?);
            VirtualCharacter::from_characters(a.indices().into_iter().filter(|&i| !s.contains(i)).map(basic_character))
        }
        BundleExpr::Dual(x) => weights(env, x)?.dual(),
        BundleExpr::Sum(xs) => {
            let mut v = VirtualCharacter::zero();
            for x in xs {
                v = v.plus(&weights(env, x)?);
            }
            v
        }
        BundleExpr::Difference(a, b) => weights(env, a)?.plus(&weights(env, b)?.scaled(-1)),
        BundleExpr::Tensor(xs) => {
            let mut v = VirtualCharacter::from_characters([[0; N]]);
            for x in xs {
                v = v.tensor(&weights(env, x)?);
            }
            v
        }
        BundleExpr::Det(x) => weights(env, x)?.det(),
        BundleExpr::Wedge(k, x) => weights(env, x)?.wedge(*k),
        BundleExpr::Trivector(q) => VirtualCharacter::from_characters(
            q.monomials(env)?
                .triples()
                .into_iter()
                .map(|[a, b, c]| add_chars(&add_chars(&basic_character(a), &basic_character(b)), &basic_character(c))),
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    /// Top Chern class, cutting down to the zero locus of a general section.
    Euler(BundleExpr),
    Chern(BundleExpr, usize),
    C1Pow(BundleExpr, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Integrand(pub Vec<Factor>);

/// Evaluated factor data at one fixed point, independent of torus values.
#[derive(Clone, Debug)]
struct PointData {
    tangent: Vec<Character>,
    factors: Vec<VirtualCharacter>,
}

fn factor_bundle(f: &Factor) -> &BundleExpr {
    match f {
        Factor::Euler(b) | Factor::Chern(b, _) | Factor::C1Pow(b, _) => b,
    }
}

fn dot(c: &Character, t: &[i64; N]) -> i64 {
    c.iter().zip(t).map(|(&a, &b)| a as i64 * b).sum()
}

/// Chern polynomial `Π (1 + w h)^m` truncated at `h^deg`.
fn chern_series(v: &VirtualCharacter, t: &[i64; N], deg: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::zero(); deg + 1];
    poly[0] = BigInt::one();
    for (c, &m) in v.terms() {
        let w = BigInt::from(dot(c, t));
        let reps = m.unsigned_abs();
        for _ in 0..reps {
            if m > 0 {
                for i in (1..=deg).rev() {
                    let add = &poly[i - 1] * &w;
                    poly[i] += add;
                }
            } else {
                for i in 1..=deg {
                    let sub = &poly[i - 1] * &w;
                    poly[i] -= sub;
                }
            }
        }
    }
    poly
}

fn factor_value(f: &Factor, v: &VirtualCharacter, t: &[i64; N]) -> BigInt {
    match f {
        Factor::Euler(_) => {
            let r = v.rank().max(0) as usize;
            chern_series(v, t, r).swap_remove(r)
        }
        Factor::Chern(_, j) => chern_series(v, t, *j).swap_remove(*j),
        Factor::C1Pow(_, k) => {
            let c1: i64 = v.terms().map(|(c, &m)| dot(c, t) * m).sum();
            num_traits::pow(BigInt::from(c1), *k)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Prepared {
    tower_dim: usize,
    points: usize,
    data: Vec<PointData>,
    integrand: Integrand,
}

/// Evaluates the tower and every factor at all fixed points, checking degrees and ranks.
pub fn prepare(t: &Tower, f: &Integrand) -> Result<Prepared, LocalizeError> {
    let pts = enumerate_fixed_points(t)?;
    let names = t.names();
    let data: Vec<PointData> = pts
        .par_iter()
        .map(|fp| {
            let env = t.env(&names, fp);
            let factors = f.0.iter().map(|x| weights(&env, factor_bundle(x))).collect::<Result<Vec<_>, _>>()?;
            Ok(PointData { tangent: t.tangent(&names, fp)?, factors })
        })
        .collect::<Result<_, LocalizeError>>()?;
    let tower_dim = data[0].tangent.len();
    for (k, factor) in f.0.iter().enumerate() {
        let first = data[0].factors[k].rank();
        if let Some(other) = data.iter().map(|d| d.factors[k].rank()).find(|&r| r != first) {
            return Err(LocalizeError::NonConstantRank { factor: k, first, other });
        }
        if matches!(factor, Factor::Euler(_)) && first < 0 {
            return Err(LocalizeError::NegativeRank);
        }
    }
    let degree: usize = f
        .0
        .iter()
        .enumerate()
        .map(|(k, x)| match x {
            Factor::Euler(_) => data[0].factors[k].rank() as usize,
            Factor::Chern(_, j) => *j,
            Factor::C1Pow(_, p) => *p,
        })
        .sum();
    if degree != tower_dim {
        return Err(LocalizeError::DegreeMismatch { integrand: degree, tower: tower_dim });
    }
    Ok(Prepared {
        tower_dim,
        points: pts.len(),
        data,
        integrand: f.clone(),
    })
}

impl Prepared {
    pub fn fixed_points(&self) -> usize {
        self.points
    }

    pub fn dimension(&self) -> usize {
        self.tower_dim
    }

    /// `None` if some tangent weight vanishes at these torus values.
    pub fn evaluate(&self, t: &[i64; N]) -> Option<BigRational> {
        if self.data.iter().any(|d| d.tangent.iter().any(|c| dot(c, t) == 0)) {
            return None;
        }
        let terms: Vec<BigRational> = self
            .data
            .par_iter()
            .map(|d| {
                let den: BigInt = d.tangent.iter().map(|c| BigInt::from(dot(c, t))).product();
                let num: BigInt =
                    self.integrand.0.iter().zip(&d.factors).map(|(f, v)| factor_value(f, v, t)).product();
                BigRational::new(num, den)
            })
            .collect();
        Some(terms.into_iter().fold(BigRational::zero(), |a, b| a + b))
    }
}

fn sample_torus<R: Rng>(rng: &mut R) -> [i64; N] {
    let mut t = [0; N];
    let mut used = BTreeSet::new();
    for x in t.iter_mut() {
        loop {
            let v = rng.gen_range(-TORUS_RANGE..=TORUS_RANGE);
            if used.insert(v) {
                *x = v;
                break;
            }
        }
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralReport {
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub value: BigInt,
    pub dimension: usize,
    pub fixed_points: usize,
    pub seed: u64,
    pub torus: [[i64; N]; 2],
    pub rejected_samples: usize,
}

/// Integral with two independently sampled torus points that must agree.
pub fn integrate(t: &Tower, f: &Integrand, seed: u64) -> Result<IntegralReport, LocalizeError> {
    let p = prepare(t, f)?;
    integrate_prepared(&p, seed)
}

pub fn integrate_prepared(p: &Prepared, seed: u64) -> Result<IntegralReport, LocalizeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0;
    let mut draw = |rejected: &mut usize| -> Result<([i64; N], BigRational), LocalizeError> {
        for _ in 0..MAX_TORUS_RETRIES {
            let t = sample_torus(&mut rng);
            if let Some(v) = p.evaluate(&t) {
                return Ok((t, v));
            }
            *rejected += 1;
        }
        Err(LocalizeError::DegenerateTorus(MAX_TORUS_RETRIES))
    };
    let (t1, v1) = draw(&mut rejected)?;
    let (t2, v2) = draw(&mut rejected)?;
    if v1 != v2 {
        return Err(LocalizeError::SampleDisagreement { first: v1.to_string(), second: v2.to_string() });
    }
    if !v1.is_integer() {
        return Err(LocalizeError::NonIntegral(v1.to_string()));
    }
    Ok(IntegralReport {
        value: v1.to_integer(),
        dimension: p.dimension(),
        fixed_points: p.fixed_points(),
        seed,
        torus: [t1, t2],
        rejected_samples: rejected,
    })
}

/// Integral at caller-supplied torus values, without the second sample.
pub fn integrate_at(t: &Tower, f: &Integrand, torus: &[i64; N]) -> Result<Option<BigRational>, LocalizeError> {
    Ok(prepare(t, f)?.evaluate(torus))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scene {
    pub name: String,
    pub tower: Tower,
    pub integrand: Integrand,
}

/// Prebuilt scenes.
pub mod scenes {
    use super::*;

    fn s(ix: &[usize]) -> IndexSubspace {
        IndexSubspace::new(ix).expect("indices in range")
    }

    fn scene(name: &str, tower: Tower, integrand: Vec<Factor>) -> Scene {
        Scene { name: name.into(), tower, integrand: Integrand(integrand) }
    }

    /// `∧³V/(U₂∧∧²V + ∧²U₅∧V)`, rank 22 on `Fl(2,5,9)`.
    pub fn ruling_bundle() -> BundleExpr {
        BundleExpr::Trivector(TrivectorQuotient::new(None, &[["U2", "V", "V"], ["U5", "U5", "V"]]))
    }

    /// `∧³V/(U₃∧∧²V + ∧³U₆)`, rank 19 on `Fl(3,6,9)`.
    pub fn plane_bundle() -> BundleExpr {
        BundleExpr::Trivector(TrivectorQuotient::new(None, &[["U3", "V", "V"], ["U6", "U6", "U6"]]))
    }

    pub fn projective_space() -> Scene {
        let t = Tower::new(vec![Step::new("L", 1, "0", "V")]);
        scene("projective-space", t, vec![Factor::C1Pow(BundleExpr::hyperplane("L"), 8)])
    }

    /// `P(U_k)` over a point, `∫ ζ^{k−1}`.
    pub fn projective_fiber(k: usize) -> Scene {
        let t = Tower::new(vec![Step::new("L", 1, "0", "U")]).with_fixed("U", IndexSubspace::initial(k));
        scene(&format!("projective-fiber-{k}"), t, vec![Factor::C1Pow(BundleExpr::hyperplane("L"), k - 1)])
    }

    /// `∫ σ₁^{18}` on `G(3,9)`.
    pub fn grassmannian_degree() -> Scene {
        scene("grassmannian-degree", Tower::flag_variety(&[3]), vec![Factor::C1Pow(BundleExpr::plucker("U3"), 18)])
    }

    /// Points of `P⁸` on the `P⁴`s `P(U₅)` of the zero locus in `Fl(2,5,9)`.
    pub fn ruling_planes() -> Scene {
        let t = Tower::flag_variety(&[2, 5]).then(Step::new("L", 1, "0", "U5"));
        scene(
            "ruling-planes",
            t,
            vec![Factor::Euler(ruling_bundle()), Factor::C1Pow(BundleExpr::hyperplane("L"), 8)],
        )
    }

    fn plane_tower() -> Tower {
        Tower::flag_variety(&[3, 6]).then(Step::new("L", 1, "0", "U3"))
    }

    pub fn plane_flags_line() -> Scene {
        scene(
            "plane-flags-line",
            plane_tower(),
            vec![
                Factor::Euler(plane_bundle()),
                Factor::C1Pow(BundleExpr::plucker("U3"), 2),
                Factor::C1Pow(BundleExpr::hyperplane("L"), 8),
            ],
        )
    }

    /// `c₂((U₃/O(−1))^∨)` in place of `c₁(O_G(1))²`.
    pub fn plane_flags_quotient() -> Scene {
        scene(
            "plane-flags-quotient",
            plane_tower(),
            vec![
                Factor::Euler(plane_bundle()),
                Factor::Chern(BundleExpr::quotient("U3", "L").dual(), 2),
                Factor::C1Pow(BundleExpr::hyperplane("L"), 8),
            ],
        )
    }

    /// Degree of the surface cut by two sections of `U^∨`.
    pub fn surface_degree() -> Scene {
        let g = BundleExpr::Sum(vec![BundleExpr::sub("U3").dual(), BundleExpr::sub("U3").dual()]);
        scene(
            "surface-degree",
            Tower::flag_variety(&[3, 6]),
            vec![Factor::Euler(plane_bundle()), Factor::Euler(g), Factor::C1Pow(BundleExpr::plucker("U3"), 2)],
        )
    }

    /// Plücker degree of the eightfold zero locus in `Fl(3,6,9)`.
    pub fn plucker_degree() -> Scene {
        scene(
            "plucker-degree",
            Tower::flag_variety(&[3, 6]),
            vec![Factor::Euler(plane_bundle()), Factor::C1Pow(BundleExpr::plucker("U3"), 8)],
        )
    }

    /// Flags `W₁ ⊂ W₆` with `U₂ ⊂ W₆`, `W₆∩U₅ = W₄`, over the fixed `U₂ ⊂ U₅`,
    /// refined by `W₃ = W₁+U₂` and `W₇ = W₆+U₅`.
    pub fn ruling_cubic_tower() -> Tower {
        Tower::new(vec![
            Step::new("W3", 3, "U2", "U5"),
            Step::new("W1", 1, "0", "W3"),
            Step::new("W4", 4, "W3", "U5"),
            Step::new("W7", 7, "U5", "V"),
            Step::new("W6", 6, "W4", "W7"),
        ])
        .with_fixed("U2", s(&[1, 2]))
        .with_fixed("U5", s(&[1, 2, 3, 4, 5]))
    }

    /// `A/(A∩B)` read pointwise; its rank jumps on this tower.
    pub fn ruling_cubic_bundle_pointwise() -> BundleExpr {
        BundleExpr::Trivector(TrivectorQuotient::new(
            Some(&[["U2", "V", "V"], ["U5", "U5", "V"]]),
            &[["W1", "V", "V"], ["W6", "W6", "V"]],
        ))
    }

    /// `ker((W₄/W₁)⊗∧²(V/W₆) → (W₄/W₃)⊗∧²(V/W₇))`, equal to `A/(A∩B)` on the stratum.
    pub fn ruling_cubic_bundle() -> BundleExpr {
        let big = BundleExpr::Tensor(vec![
            BundleExpr::quotient("W4", "W1"),
            BundleExpr::Wedge(2, Box::new(BundleExpr::quotient("V", "W6"))),
        ]);
        let small = BundleExpr::Tensor(vec![
            BundleExpr::quotient("W4", "W3"),
            BundleExpr::Wedge(2, Box::new(BundleExpr::quotient("V", "W7"))),
        ]);
        big.minus(small)
    }

    pub fn ruling_cubic() -> Scene {
        scene(
            "ruling-cubic",
            ruling_cubic_tower(),
            vec![Factor::Euler(ruling_cubic_bundle()), Factor::C1Pow(BundleExpr::hyperplane("W1"), 3)],
        )
    }

    /// Flags `W₁ ⊂ U₃ ⊂ W₆` with `dim(W₆∩U₆) ≥ 5`, over the fixed `U₃ ⊂ U₆`.
    pub fn plane_cubic_tower() -> Tower {
        Tower::new(vec![
            Step::new("T5", 5, "U3", "U6"),
            Step::new("W6", 6, "T5", "V"),
            Step::new("W1", 1, "0", "U3"),
        ])
        .with_fixed("U3", s(&[1, 2, 3]))
        .with_fixed("U6", s(&[1, 2, 3, 4, 5, 6]))
    }

    pub fn plane_cubic_bundle() -> BundleExpr {
        BundleExpr::Trivector(TrivectorQuotient::new(
            Some(&[["U3", "V", "V"], ["U6", "U6", "U6"]]),
            &[["W1", "V", "V"], ["W6", "W6", "V"]],
        ))
    }

    pub fn plane_cubic() -> Scene {
        scene(
            "plane-cubic",
            plane_cubic_tower(),
            vec![Factor::Euler(plane_cubic_bundle()), Factor::C1Pow(BundleExpr::hyperplane("W1"), 1)],
        )
    }

    /// Named scenes with the expected integral.
    pub fn catalogue() -> Vec<(Scene, i64)> {
        vec![
            (projective_space(), 1),
            (projective_fiber(2), 1),
            (projective_fiber(3), 1),
            (projective_fiber(5), 1),
            (grassmannian_degree(), 87516),
            (ruling_planes(), 18),
            (plane_flags_line(), 18),
            (plane_flags_quotient(), 6),
            (surface_degree(), 36),
            (plucker_degree(), 8586),
            (ruling_cubic(), 3),
            (plane_cubic(), 3),
        ]
    }

    pub fn by_name(name: &str) -> Result<Scene, LocalizeError> {
        catalogue()
            .into_iter()
            .map(|(s, _)| s)
            .find(|s| s.name == name)
            .ok_or_else(|| LocalizeError::UnknownScene(name.into()))
    }

    pub fn names() -> Vec<String> {
        catalogue().into_iter().map(|(s, _)| s.name).collect()
    }
}

/// `deg G(k,n) = (k(n−k))! · Π_{i<k} i!/(n−k+i)!` via the hook-content formula.
pub fn grassmannian_degree(k: usize, n: usize) -> BigInt {
    let fact = |m: usize| -> BigInt { (1..=m).map(BigInt::from).product() };
    let mut num = fact(k * (n - k));
    let mut den = BigInt::one();
    for i in 0..k {
        num *= fact(i);
        den *= fact(n - k + i);
    }
    num / den
}

pub fn is_positive_integer(v: &BigRational) -> bool {
    v.is_integer() && v.is_positive()
}

#[cfg(test)]
mod tests {
    use super::scenes::*;
    use super::*;

    fn run(sc: &Scene) -> IntegralReport {
        integrate(&sc.tower, &sc.integrand, 7).unwrap()
    }

    #[test]
    fn parse_expressions() {
        let e = SpaceExpr::parse("W6 + U3&(U6+W1)").unwrap();
        assert_eq!(e.to_string(), "W6+U3&(U6+W1)");
        assert!(SpaceExpr::parse("W6+").is_err());
        assert!(SpaceExpr::parse("(W6").is_err());
    }

    #[test]
    fn fixed_point_counts() {
        assert_eq!(enumerate_fixed_points(&Tower::flag_variety(&[3])).unwrap().len(), 84);
        assert_eq!(enumerate_fixed_points(&plane_flags_line().tower).unwrap().len(), 5040);
        assert_eq!(enumerate_fixed_points(&ruling_planes().tower).unwrap().len(), 6300);
        assert_eq!(enumerate_fixed_points(&Tower::flag_variety(&[3, 6])).unwrap().len(), 1680);
    }

    #[test]
    fn tangent_of_projective_plane() {
        let t = Tower::new(vec![Step::new("L", 1, "0", "U")]).with_fixed("U", IndexSubspace::initial(3));
        let fp = FixedPoint { subspaces: vec![IndexSubspace::new(&[1]).unwrap()] };
        let names = t.names();
        let w: BTreeSet<String> = t.tangent(&names, &fp).unwrap().iter().map(character_string).collect();
        assert_eq!(w, ["t2-t1", "t3-t1"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn weights_of_named_bundles() {
        let t = Tower::flag_variety(&[3, 6]);
        let fp = FixedPoint { subspaces: vec![IndexSubspace::initial(6), IndexSubspace::initial(3)] };
        let e = bundle_weights_at(&t, &fp, &plane_bundle()).unwrap();
        assert_eq!(e.rank(), 19);
        assert!(e.is_effective());
        let g = bundle_weights_at(&t, &fp, &BundleExpr::plucker("U3")).unwrap();
        assert_eq!(g.to_strings(), vec![("-t1-t2-t3".to_string(), 1)]);
    }

    #[test]
    fn virtual_exterior_powers() {
        let v = VirtualCharacter::from_characters([basic_character(1), basic_character(2), basic_character(3)]);
        assert_eq!(v.wedge(2).rank(), 3);
        assert_eq!(v.wedge(3), v.det());
        let d = v.plus(&VirtualCharacter::from_characters([basic_character(3)]).scaled(-1));
        assert_eq!(d.wedge(2), VirtualCharacter::from_characters([add_chars(&basic_character(1), &basic_character(2))]));
        assert_eq!(generalized_binomial(-1, 3), -1);
        assert_eq!(generalized_binomial(-2, 2), 3);
    }

    #[test]
    fn sanity_integrals() {
        assert_eq!(run(&projective_space()).value, 1.into());
        for k in [2, 3, 5] {
            assert_eq!(run(&projective_fiber(k)).value, 1.into(), "k = {k}");
        }
        assert_eq!(run(&scenes::grassmannian_degree()).value, 87516.into());
        assert_eq!(super::grassmannian_degree(3, 9), 87516.into());
        assert_eq!(super::grassmannian_degree(2, 4), 2.into());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let mut sc = projective_space();
        sc.integrand = Integrand(vec![Factor::C1Pow(BundleExpr::hyperplane("L"), 7)]);
        assert_eq!(
            integrate(&sc.tower, &sc.integrand, 1),
            Err(LocalizeError::DegreeMismatch { integrand: 7, tower: 8 })
        );
    }

    #[test]
    fn pointwise_quotient_jumps_on_cubic_tower() {
        let f = Integrand(vec![Factor::Euler(ruling_cubic_bundle_pointwise()), Factor::C1Pow(BundleExpr::hyperplane("W1"), 3)]);
        assert!(matches!(prepare(&ruling_cubic_tower(), &f), Err(LocalizeError::NonConstantRank { .. })));
    }

    #[test]
    fn cubic_bundle_is_the_quotient_at_a_generic_point() {
        let t = ruling_cubic_tower();
        let rep = FixedPoint {
            subspaces: [&[1, 2, 3][..], &[3], &[1, 2, 3, 4], &[1, 2, 3, 4, 5, 6, 7], &[1, 2, 3, 4, 6, 7]]
                .iter()
                .map(|ix| IndexSubspace::new(ix).unwrap())
                .collect(),
        };
        let honest = bundle_weights_at(&t, &rep, &ruling_cubic_bundle()).unwrap();
        assert_eq!(honest, bundle_weights_at(&t, &rep, &ruling_cubic_bundle_pointwise()).unwrap());
        assert_eq!(honest.rank(), 8);
        for fp in enumerate_fixed_points(&t).unwrap() {
            assert!(bundle_weights_at(&t, &fp, &ruling_cubic_bundle()).unwrap().is_effective());
        }
    }

    #[test]
    fn plane_scenes() {
        for (sc, expected) in [(plane_flags_quotient(), 6), (surface_degree(), 36), (plane_cubic(), 3)] {
            assert_eq!(run(&sc).value, expected.into(), "{}", sc.name);
        }
    }

    #[test]
    fn scene_json_round_trip() {
        let sc = ruling_cubic();
        let js = serde_json::to_string(&sc).unwrap();
        let back: Scene = serde_json::from_str(&js).unwrap();
        assert_eq!(back, sc);
    }
}
