use std::collections::{BTreeMap, BTreeSet};

use super::{Gen, GinzburgPresentation, Path};
use crate::error::{Error, Result};
use crate::field::ExactMatrix;
use crate::quiver::{group_order, GradedQuiver, DEFAULT_COSET_CAP};

/// Paths `v → w` of bounded length, graded by degree, with the differential between
/// consecutive degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComplex {
    pub source: usize,
    pub target: usize,
    pub maxlen: usize,
    /// Basis per degree, ordered by (length, path).
    pub bases: BTreeMap<i64, Vec<Path>>,
    /// `differentials[k]` maps the degree-`k` basis to the degree-`k+1` basis.
    pub differentials: BTreeMap<i64, ExactMatrix>,
    /// Paths whose differential has terms longer than `maxlen`; their columns are truncated.
    pub flagged: BTreeSet<Path>,
}

impl HomComplex {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.bases.iter().map(|(d, b)| (*d, b.len())).collect()
    }
}

/// Letters whose step starts at `u`.
fn letters_from(q: &GradedQuiver, u: usize) -> Vec<Gen> {
    let mut out = Vec::new();
    for e in 0..q.num_arrows() {
        let (s, t) = q.ends(e);
        if s == u {
            out.push(Gen::X(e));
        }
        if t == u {
            out.push(Gen::Y(e));
        }
    }
    out.push(Gen::H(u));
    if let Some(g) = q.group(u) {
        for gen in 0..g.generators.len() {
            out.push(Gen::G {
                vertex: u,
                gen,
                inverse: false,
            });
            out.push(Gen::G {
                vertex: u,
                gen,
                inverse: true,
            });
        }
    }
    out
}

/// Visits every reduced path starting at `v` with at most `maxlen` letters.
fn for_each_path(q: &GradedQuiver, v: usize, maxlen: usize, f: &mut dyn FnMut(&Path)) {
    let nexts: Vec<Vec<Gen>> = (0..q.num_vertices()).map(|u| letters_from(q, u)).collect();
    fn go(q: &GradedQuiver, nexts: &[Vec<Gen>], p: &mut Path, maxlen: usize, f: &mut dyn FnMut(&Path)) {
        f(p);
        if p.letters.len() == maxlen {
            return;
        }
        let here = p.tgt;
        for &g in &nexts[here] {
            if let Some(first) = p.letters.first() {
                if first.cancels(&g) {
                    continue;
                }
            }
            let (_, to) = g.ends(q);
            p.letters.insert(0, g);
            let saved = p.tgt;
            p.tgt = to;
            go(q, nexts, p, maxlen, f);
            p.tgt = saved;
            p.letters.remove(0);
        }
    }
    let mut p = Path::lazy(v);
    go(q, &nexts, &mut p, maxlen, f);
}

/// Report of the `d² = 0` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquareReport {
    pub ok: bool,
    pub paths_checked: usize,
    pub failures: Vec<String>,
}

impl GinzburgPresentation {
    /// The truncated morphism complex from `v` to `w`.
    pub fn hom_complex_truncated(&self, v: usize, w: usize, maxlen: usize) -> HomComplex {
        let q = self.quiver();
        let mut paths = Vec::new();
        for_each_path(q, v, maxlen, &mut |p| {
            if p.tgt == w {
                paths.push(p.clone());
            }
        });
        paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut bases: BTreeMap<i64, Vec<Path>> = BTreeMap::new();
        for p in paths {
            bases.entry(p.degree(q)).or_default().push(p);
        }
        let index: BTreeMap<&Path, usize> = bases
            .values()
            .flat_map(|b| b.iter().enumerate().map(|(i, p)| (p, i)))
            .collect();
        let field = self.field();
        let mut differentials = BTreeMap::new();
        let mut flagged = BTreeSet::new();
        for (&deg, basis) in &bases {
            let rows = bases.get(&(deg + 1)).map_or(0, Vec::len);
            let mut m = ExactMatrix::zeros(field, rows, basis.len());
            for (j, p) in basis.iter().enumerate() {
                for (r, c) in self.d_path(p).terms() {
                    match index.get(r) {
                        Some(&i) if r.len() <= maxlen => m.set(i, j, c.clone()),
                        _ => {
                            flagged.insert(p.clone());
                        }
                    }
                }
            }
            differentials.insert(deg, m);
        }
        HomComplex {
            source: v,
            target: w,
            maxlen,
            bases,
            differentials,
            flagged,
        }
    }

    /// Checks `d ∘ d = 0` on every generator and every path with at most `maxlen` letters.
    pub fn d_square_check(&self, maxlen: usize) -> DSquareReport {
        let q = self.quiver();
        let mut failures = Vec::new();
        let mut checked = 0;
        let packed = PackedDifferential::new(self, maxlen);
        for g in self.generators() {
            let dd = self
                .apply_differential(&self.d_gen(g))
                .expect("generator differentials are homogeneous");
            if !dd.is_zero() {
                failures.push(g.id(q));
            }
        }
        if let Some(pk) = &packed {
            checked = pk.check_all(q, maxlen, &mut failures);
        } else {
            for v in 0..q.num_vertices() {
                for_each_path(q, v, maxlen, &mut |p| {
                    checked += 1;
                    // d vanishes on h-free paths, so only paths through some h_v carry work.
                    if !p.letters.iter().any(Gen::is_h) {
                        return;
                    }
                    let d = self.d_path(p);
                    let mut dd = super::PathExpr::zero(self.field());
                    for (r, c) in d.terms() {
                        self.add_d_path(r, c, &mut dd);
                    }
                    if !dd.is_zero() && failures.len() < 16 {
                        failures.push(p.render(q));
                    }
                });
            }
        }
        DSquareReport {
            ok: failures.is_empty(),
            paths_checked: checked,
            failures,
        }
    }
}

/// `d ∘ d` on paths packed into `u128` words with integer coefficients.
///
/// Letters are coded `1..=255`, eight bits each, leftmost letter in the highest used
/// byte; a word is `(bits, len)`. Integer sums are reduced into the field only at the end,
/// which matches field arithmetic because the reduction is a ring map.
struct PackedDifferential {
    field: crate::field::FieldSpec,
    code: BTreeMap<Gen, u8>,
    degree: Vec<i64>,
    /// Per code: `d(h_v)` as (packed letters, length, coefficient) for an `h` letter.
    dh: Vec<Vec<(u128, usize, i64)>>,
    scratch: std::cell::RefCell<(Vec<(u128, i64)>, Vec<(u128, usize, i64)>)>,
}

fn byte_at(word: u128, len: usize, i: usize) -> usize {
    ((word >> (8 * (len - 1 - i))) & 0xff) as usize
}

impl PackedDifferential {
    fn new(pres: &GinzburgPresentation, maxlen: usize) -> Option<Self> {
        let q = pres.quiver();
        let gens = pres.generators();
        if gens.len() >= 256 {
            return None;
        }
        let code: BTreeMap<Gen, u8> = gens.iter().enumerate().map(|(i, g)| (*g, i as u8 + 1)).collect();
        let mut degree = vec![0; gens.len() + 1];
        let mut dh = vec![Vec::new(); gens.len() + 1];
        let mut longest = 0;
        for g in &gens {
            let c = code[g] as usize;
            degree[c] = g.degree(q);
            if let Gen::H(v) = g {
                for (p, k) in pres.dh(*v).terms() {
                    let letters: Vec<u8> = p.letters.iter().map(|l| code[l]).collect();
                    longest = longest.max(letters.len());
                    dh[c].push((Self::pack(&letters), letters.len(), k.small_integer()?));
                }
            }
        }
        // two replacements of one letter each by a word of length `longest`
        if maxlen + 2 * longest.saturating_sub(1) > 16 {
            return None;
        }
        Some(PackedDifferential {
            field: pres.field(),
            code,
            degree,
            dh,
            scratch: Default::default(),
        })
    }

    fn pack(word: &[u8]) -> u128 {
        word.iter().fold(0u128, |acc, &c| (acc << 8) | u128::from(c))
    }

    /// Pushes the terms of `c · d(word)`.
    fn d_into(&self, word: u128, len: usize, c: i64, out: &mut Vec<(u128, usize, i64)>) {
        let mut prefix_degree = 0;
        for i in 0..len {
            let l = byte_at(word, len, i);
            let tail_bits = 8 * (len - 1 - i);
            let head = word.checked_shr(8 * (len - i) as u32).unwrap_or(0);
            let tail = word & ((1u128 << tail_bits) - 1);
            for &(mid, mlen, k) in &self.dh[l] {
                let w = ((head << (8 * mlen)) | mid) << tail_bits | tail;
                out.push((w, len + mlen - 1, c * k * super::sign_pow(prefix_degree)));
            }
            prefix_degree += self.degree[l];
        }
    }

    #[cfg(test)]
    fn d_square_vanishes(&self, p: &Path) -> bool {
        let word = p
            .letters
            .iter()
            .fold(0u128, |acc, l| (acc << 8) | u128::from(self.code[l]));
        self.word_d_square_vanishes(word, p.letters.len())
    }

    /// Runs the check on every reduced path from every vertex; returns the path count.
    fn check_all(&self, q: &GradedQuiver, maxlen: usize, failures: &mut Vec<String>) -> usize {
        let nexts: Vec<Vec<(u8, Gen, usize)>> = (0..q.num_vertices())
            .map(|u| {
                letters_from(q, u)
                    .into_iter()
                    .map(|g| (self.code[&g], g, g.ends(q).1))
                    .collect()
            })
            .collect();
        let mut checked = 0;
        for v in 0..q.num_vertices() {
            let mut letters: Vec<Gen> = Vec::new();
            self.walk(q, &nexts, v, v, 0, 0, maxlen, &mut letters, &mut checked, failures);
        }
        checked
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        q: &GradedQuiver,
        nexts: &[Vec<(u8, Gen, usize)>],
        src: usize,
        at: usize,
        word: u128,
        hs: usize,
        maxlen: usize,
        letters: &mut Vec<Gen>,
        checked: &mut usize,
        failures: &mut Vec<String>,
    ) {
        *checked += 1;
        let len = letters.len();
        // d vanishes on h-free paths, so only paths through some h_v carry work.
        if hs > 0 && !self.word_d_square_vanishes(word, len) && failures.len() < 16 {
            let mut rev = letters.clone();
            rev.reverse();
            let p = Path {
                src,
                tgt: at,
                letters: rev,
            };
            failures.push(p.render(q));
        }
        if len == maxlen {
            return;
        }
        for &(c, g, to) in &nexts[at] {
            if letters.last().is_some_and(|l| l.cancels(&g)) {
                continue;
            }
            // new letters are traversed last, so they go on the left
            let w = (u128::from(c) << (8 * len)) | word;
            letters.push(g);
            self.walk(
                q,
                nexts,
                src,
                to,
                w,
                hs + usize::from(g.is_h()),
                maxlen,
                letters,
                checked,
                failures,
            );
            letters.pop();
        }
    }

    fn word_d_square_vanishes(&self, word: u128, len: usize) -> bool {
        let mut guard = self.scratch.borrow_mut();
        let (acc, first) = &mut *guard;
        acc.clear();
        first.clear();
        self.d_into(word, len, 1, first);
        let mut second = Vec::new();
        for &(w, len, c) in first.iter() {
            second.clear();
            self.d_into(w, len, c, &mut second);
            // codes are nonzero, so the bits alone determine the length
            acc.extend(second.iter().map(|&(w2, _, c2)| (w2, c2)));
        }
        acc.sort_unstable_by_key(|t| t.0);
        let mut i = 0;
        while i < acc.len() {
            let mut sum = 0i64;
            let mut j = i;
            while j < acc.len() && acc[j].0 == acc[i].0 {
                sum += acc[j].1;
                j += 1;
            }
            if !self.field.from_i64(sum).is_zero() {
                return false;
            }
            i = j;
        }
        true
    }
}

/// Dimension of the degree-0 closed paths at `v` with at most `L` arrow steps, for each
/// `L` in `lengths`. Each vertex visit contributes a factor `|G_u|` for group vertices.
pub fn h0_growth(pres: &GinzburgPresentation, v: usize, lengths: &[usize]) -> Result<Vec<u128>> {
    let q = pres.quiver();
    q.require_window()?;
    let nv = q.num_vertices();
    let mut weight = vec![1u128; nv];
    for (u, w) in weight.iter_mut().enumerate() {
        if let Some(g) = q.group(u) {
            let finite = !(g.relations.is_empty() && !g.generators.is_empty());
            match group_order(g, DEFAULT_COSET_CAP) {
                Some(k) if finite => *w = k as u128,
                _ => {
                    return Err(Error::Unsupported(format!(
                        "vertex {:?} carries a group not known to be finite",
                        q.vertex_id(u)
                    )))
                }
            }
        }
    }
    let overflow = || Error::Unsupported("path count overflows u128".into());
    let max_len = lengths.iter().copied().max().unwrap_or(0);
    // walks[u] = weighted count of degree-0 walks from v ending at u with exactly ℓ steps
    let mut walks = vec![0u128; nv];
    walks[v] = weight[v];
    let mut closed = vec![walks[v]];
    for _ in 0..max_len {
        let mut next = vec![0u128; nv];
        for e in q.zero_arrows() {
            let (s, t) = q.ends(e);
            let add = walks[s].checked_mul(weight[t]).ok_or_else(overflow)?;
            next[t] = next[t].checked_add(add).ok_or_else(overflow)?;
        }
        walks = next;
        closed.push(walks[v]);
    }
    let mut cumulative = Vec::with_capacity(closed.len());
    let mut acc = 0u128;
    for c in closed {
        acc = acc.checked_add(c).ok_or_else(overflow)?;
        cumulative.push(acc);
    }
    Ok(lengths.iter().map(|&l| cumulative[l]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::fixtures::{ex_a, ex_b};
    use crate::ginzburg::{Mode, PathExpr};

    fn generic_vanishes(pres: &GinzburgPresentation, p: &Path) -> bool {
        let mut dd = PathExpr::zero(pres.field());
        for (r, c) in pres.d_path(p).terms() {
            pres.add_d_path(r, c, &mut dd);
        }
        dd.is_zero()
    }

    #[test]
    fn packed_agrees_with_generic() {
        for q in [ex_a(FieldSpec::Rationals), ex_b(FieldSpec::Prime(3))] {
            for mode in [Mode::Commutator, Mode::Theorem65] {
                let pres = GinzburgPresentation::new(&q, mode).unwrap();
                let pk = PackedDifferential::new(&pres, 4).unwrap();
                let mut generic_count = 0;
                for v in 0..q.num_vertices() {
                    for_each_path(&q, v, 4, &mut |_| generic_count += 1);
                }
                let mut failures = Vec::new();
                assert_eq!(pk.check_all(&q, 4, &mut failures), generic_count);
                assert!(failures.is_empty());
                for v in 0..q.num_vertices() {
                    for_each_path(&q, v, 4, &mut |p| {
                        assert_eq!(pk.d_square_vanishes(p), generic_vanishes(&pres, p));
                    });
                }
            }
        }
    }

    #[test]
    fn packed_detects_a_wrong_koszul_sign() {
        let q = ex_a(FieldSpec::Rationals);
        let pres = GinzburgPresentation::new(&q, Mode::Commutator).unwrap();
        let mut pk = PackedDifferential::new(&pres, 4).unwrap();
        let h = pk.code[&Gen::H(0)] as usize;
        pk.degree[h] += 1;
        let mut caught = false;
        for_each_path(&q, 0, 3, &mut |p| caught |= !pk.d_square_vanishes(p));
        assert!(caught);
        let mut failures = Vec::new();
        pk.check_all(&q, 3, &mut failures);
        assert!(failures.iter().any(|f| f.contains("h_x")));
    }
}
