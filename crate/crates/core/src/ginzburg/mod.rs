//! The Ginzburg dg algebra of a graded quiver: generators, degrees and the differential.

mod complex;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::quiver::GradedQuiver;

pub use complex::{h0_growth, DSquareReport, HomComplex};

/// Which differential `d(h_v)` to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// The graded commutator sum `1_v (Σ [x_e, y_e]) 1_v`.
    Commutator,
    /// Per-arrow signs `(−1)^{n d_e}` on outgoing and `(−1)^{n(n−1)/2} sgn(e)` on incoming arrows.
    Theorem65,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "commutator" => Ok(Mode::Commutator),
            "theorem65" => Ok(Mode::Theorem65),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// A generator of the path algebra. Paths traverse `X(e)` from source to target and
/// `Y(e)` backwards; `H(v)` and group letters are loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X(usize),
    Y(usize),
    H(usize),
    G { vertex: usize, gen: usize, inverse: bool },
}

impl Gen {
    /// `(start, end)` of the step this letter takes.
    pub fn ends(&self, q: &GradedQuiver) -> (usize, usize) {
        match *self {
            Gen::X(e) => q.ends(e),
            Gen::Y(e) => {
                let (s, t) = q.ends(e);
                (t, s)
            }
            Gen::H(v) | Gen::G { vertex: v, .. } => (v, v),
        }
    }

    pub fn degree(&self, q: &GradedQuiver) -> i64 {
        match *self {
            Gen::X(e) => q.degree(e),
            Gen::Y(e) => q.dual_degree(e),
            Gen::H(_) => 1 - q.n(),
            Gen::G { .. } => 0,
        }
    }

    /// `x_<arrow>`, `y_<arrow>`, `h_<vertex>`, `g_<vertex>:<gen>` with `^-1` for inverses.
    pub fn id(&self, q: &GradedQuiver) -> String {
        match *self {
            Gen::X(e) => format!("x_{}", q.arrow_id(e)),
            Gen::Y(e) => format!("y_{}", q.arrow_id(e)),
            Gen::H(v) => format!("h_{}", q.vertex_id(v)),
            Gen::G { vertex, gen, inverse } => {
                let g = &q.group(vertex).expect("group vertex").generators[gen];
                let base = format!("g_{}:{}", q.vertex_id(vertex), g);
                if inverse {
                    format!("{base}^-1")
                } else {
                    base
                }
            }
        }
    }

    /// Inverse of [`Gen::id`].
    pub fn parse(q: &GradedQuiver, s: &str) -> Result<Gen> {
        let bad = || Error::Parse(format!("unknown generator id {s:?}"));
        if let Some(a) = s.strip_prefix("x_") {
            return Ok(Gen::X(q.arrow_index(a).map_err(|_| bad())?));
        }
        if let Some(a) = s.strip_prefix("y_") {
            return Ok(Gen::Y(q.arrow_index(a).map_err(|_| bad())?));
        }
        if let Some(v) = s.strip_prefix("h_") {
            return Ok(Gen::H(q.vertex_index(v).map_err(|_| bad())?));
        }
        if let Some(rest) = s.strip_prefix("g_") {
            let (v, letter) = rest.split_once(':').ok_or_else(bad)?;
            let vertex = q.vertex_index(v).map_err(|_| bad())?;
            let g = q.group(vertex).ok_or_else(bad)?;
            let (gen, inverse) = g.letter(letter).ok_or_else(bad)?;
            return Ok(Gen::G { vertex, gen, inverse });
        }
        Err(bad())
    }

    pub fn is_h(&self) -> bool {
        matches!(self, Gen::H(_))
    }

    fn cancels(&self, other: &Gen) -> bool {
        matches!(
            (self, other),
            (Gen::G { vertex: a, gen: b, inverse: c }, Gen::G { vertex: x, gen: y, inverse: z })
                if a == x && b == y && c != z
        )
    }
}

/// A path written right to left: `letters[0]` is traversed last. It runs from `src` to `tgt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub letters: Vec<Gen>,
}

impl Path {
    pub fn lazy(v: usize) -> Path {
        Path {
            src: v,
            tgt: v,
            letters: vec![],
        }
    }

    pub fn letter(q: &GradedQuiver, g: Gen) -> Path {
        let (s, t) = g.ends(q);
        Path {
            src: s,
            tgt: t,
            letters: vec![g],
        }
    }

    /// Builds a path from letters in written order, checking composability.
    pub fn from_letters(q: &GradedQuiver, letters: Vec<Gen>) -> Result<Path> {
        let Some(last) = letters.last() else {
            return Err(Error::Parse("empty letter list; use Path::lazy".into()));
        };
        let src = last.ends(q).0;
        let tgt = letters[0].ends(q).1;
        for w in letters.windows(2) {
            if w[1].ends(q).1 != w[0].ends(q).0 {
                return Err(Error::Parse(format!("{} cannot follow {}", w[0].id(q), w[1].id(q))));
            }
        }
        Ok(Path { src, tgt, letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self, q: &GradedQuiver) -> i64 {
        self.letters.iter().map(|g| g.degree(q)).sum()
    }

    /// `self · other`: traverse `other`, then `self`. `None` when not composable.
    /// Adjacent inverse group letters cancel.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if other.tgt != self.src {
            return None;
        }
        let mut letters = self.letters.clone();
        for g in &other.letters {
            match letters.last() {
                Some(last) if last.cancels(g) => {
                    letters.pop();
                }
                _ => letters.push(*g),
            }
        }
        Some(Path {
            src: other.src,
            tgt: self.tgt,
            letters,
        })
    }

    pub fn render(&self, q: &GradedQuiver) -> String {
        if self.letters.is_empty() {
            return format!("1_{}", q.vertex_id(self.src));
        }
        self.letters.iter().map(|g| g.id(q)).collect::<Vec<_>>().join(" ")
    }
}

/// A linear combination of parallel paths with nonzero coefficients, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathExpr {
    field: FieldSpec,
    terms: BTreeMap<Path, Scalar>,
}

impl PathExpr {
    pub fn zero(field: FieldSpec) -> Self {
        PathExpr {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(field: FieldSpec, p: Path) -> Self {
        let mut e = Self::zero(field);
        e.add_term(field.one(), p);
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, c: Scalar, p: Path) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &PathExpr) -> PathExpr {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(c.clone(), p.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> PathExpr {
        let mut out = Self::zero(self.field);
        for (p, a) in &self.terms {
            out.add_term(a * c, p.clone());
        }
        out
    }

    /// `self · other`; non-composable pairs contribute zero.
    pub fn mul(&self, other: &PathExpr) -> PathExpr {
        let mut out = Self::zero(self.field);
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.compose(r) {
                    out.add_term(a * b, pr);
                }
            }
        }
        out
    }

    /// The common degree of all terms; `Ok(None)` for the zero expression.
    pub fn degree(&self, q: &GradedQuiver) -> Result<Option<i64>> {
        let mut deg = None;
        for p in self.terms.keys() {
            let d = p.degree(q);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return Err(Error::NonHomogeneous(d0, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn render(&self, q: &GradedQuiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative() || matches!(c, Scalar::Modular { value, modulus } if *value > modulus / 2);
            let mag = if neg { -c } else { c.clone() };
            let coef = match &mag {
                m if m.is_one() => String::new(),
                Scalar::Modular { value, .. } => format!("{value} "),
                m => format!("{m} "),
            };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&coef);
            s.push_str(&p.render(q));
        }
        s
    }
}

/// Generators, degrees and differential of the Ginzburg dg algebra of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinzburgPresentation {
    quiver: GradedQuiver,
    mode: Mode,
    dh: Vec<PathExpr>,
}

impl GinzburgPresentation {
    pub fn new(q: &GradedQuiver, mode: Mode) -> Result<Self> {
        if mode == Mode::Theorem65 && q.has_group_vertices() {
            return Err(Error::Unsupported(
                "theorem65 mode needs the chain-level term η_v(z), which is not available for group vertices".into(),
            ));
        }
        let field = q.field();
        let n = q.n();
        let mut dh = Vec::with_capacity(q.num_vertices());
        for v in 0..q.num_vertices() {
            let mut expr = PathExpr::zero(field);
            for e in 0..q.num_arrows() {
                let (s, t) = q.ends(e);
                let x = Gen::X(e);
                let y = Gen::Y(e);
                if s == v {
                    let c = match mode {
                        Mode::Commutator => 1,
                        Mode::Theorem65 => sign_pow(n * q.degree(e)),
                    };
                    expr.add_term(field.from_i64(c), Path::from_letters(q, vec![y, x])?);
                }
                if t == v {
                    let c = match mode {
                        Mode::Commutator => -sign_pow(q.degree(e) * q.dual_degree(e)),
                        Mode::Theorem65 => sign_pow(n * (n - 1) / 2) * q.sign(e) as i64,
                    };
                    expr.add_term(field.from_i64(c), Path::from_letters(q, vec![x, y])?);
                }
            }
            dh.push(expr);
        }
        Ok(GinzburgPresentation {
            quiver: q.clone(),
            mode,
            dh,
        })
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn field(&self) -> FieldSpec {
        self.quiver.field()
    }

    /// `d(h_v)`.
    pub fn dh(&self, v: usize) -> &PathExpr {
        &self.dh[v]
    }

    /// Every generator: `x_e, y_e` per arrow, `h_v` and group letters (with inverses) per vertex.
    pub fn generators(&self) -> Vec<Gen> {
        let q = &self.quiver;
        let mut out = Vec::new();
        for e in 0..q.num_arrows() {
            out.push(Gen::X(e));
            out.push(Gen::Y(e));
        }
        for v in 0..q.num_vertices() {
            out.push(Gen::H(v));
            if let Some(g) = q.group(v) {
                for gen in 0..g.generators.len() {
                    out.push(Gen::G {
                        vertex: v,
                        gen,
                        inverse: false,
                    });
                    out.push(Gen::G {
                        vertex: v,
                        gen,
                        inverse: true,
                    });
                }
            }
        }
        out
    }

    /// Differential of a single generator.
    pub fn d_gen(&self, g: Gen) -> PathExpr {
        match g {
            Gen::H(v) => self.dh[v].clone(),
            _ => PathExpr::zero(self.field()),
        }
    }

    /// Leibniz rule `d(pq) = d(p) q + (−1)^{|p|} p d(q)` applied to one path.
    pub fn d_path(&self, p: &Path) -> PathExpr {
        let mut out = PathExpr::zero(self.field());
        self.add_d_path(p, &self.field().one(), &mut out);
        out
    }

    /// Adds `c · d(p)` to `out` in place.
    pub(crate) fn add_d_path(&self, p: &Path, c: &Scalar, out: &mut PathExpr) {
        let q = &self.quiver;
        // letters[0] is leftmost; the prefix degree is the degree of letters[..i].
        let mut prefix_degree = 0;
        for (i, g) in p.letters.iter().enumerate() {
            if let Gen::H(v) = g {
                let signed = if sign_pow(prefix_degree) < 0 {
                    -c.clone()
                } else {
                    c.clone()
                };
                for (mid, k) in self.dh[*v].terms() {
                    let mut letters = Vec::with_capacity(p.letters.len() + mid.letters.len());
                    letters.extend_from_slice(&p.letters[..i]);
                    letters.extend(mid.letters.iter().copied());
                    letters.extend_from_slice(&p.letters[i + 1..]);
                    out.add_term(
                        k * &signed,
                        Path {
                            src: p.src,
                            tgt: p.tgt,
                            letters,
                        },
                    );
                }
            }
            prefix_degree += g.degree(q);
        }
    }

    /// `d(x)` for a homogeneous expression; raises the degree by one.
    pub fn apply_differential(&self, x: &PathExpr) -> Result<PathExpr> {
        x.degree(&self.quiver)?;
        let mut out = PathExpr::zero(self.field());
        for (p, c) in x.terms() {
            self.add_d_path(p, c, &mut out);
        }
        Ok(out)
    }

    /// Leaves the loop ambiguity on record: an arrow `v → v` enters both sums of `d(h_v)`.
    pub fn loop_convention(&self) -> &'static str {
        "a loop arrow contributes once as outgoing and once as incoming"
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Commutator => write!(f, "commutator"),
            Mode::Theorem65 => write!(f, "theorem65"),
        }
    }
}

/// `(−1)^k`.
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
