use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use super::GradedQuiver;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

/// A closed walk that visits no vertex twice except its basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleTraversal {
    pub steps: Vec<(String, Direction)>,
}

impl CycleTraversal {
    /// A traversal along the given arrows, all stepped forward, in traversal order.
    pub fn forward<S: AsRef<str>>(arrows: &[S]) -> Self {
        CycleTraversal {
            steps: arrows
                .iter()
                .map(|a| (a.as_ref().to_string(), Direction::Forward))
                .collect(),
        }
    }

    pub fn arrow_set(&self) -> BTreeSet<String> {
        self.steps.iter().map(|(a, _)| a.clone()).collect()
    }

    /// The path word in composition order: the last step is written first.
    pub fn word(&self) -> String {
        self.steps
            .iter()
            .rev()
            .map(|(a, d)| match d {
                Direction::Forward => a.clone(),
                Direction::Backward => format!("{a}^op"),
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Display for CycleTraversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// A connected union of degree-0 cycles, identified by its arrow set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycClass {
    pub arrows: BTreeSet<String>,
}

impl CycClass {
    pub fn new<S: AsRef<str>>(arrows: &[S]) -> Self {
        CycClass {
            arrows: arrows.iter().map(|a| a.as_ref().to_string()).collect(),
        }
    }
}

impl fmt::Display for CycClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<&str> = self.arrows.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// An element of 𝔹: a vertex or a cycle class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Support {
    Vertex(String),
    Cycle(CycClass),
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Vertex(v) => write!(f, "{v}"),
            Support::Cycle(c) => write!(f, "{c}"),
        }
    }
}

/// A pair `(C, s)` of a support and a degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportLabel {
    pub support: Support,
    pub shift: i64,
}

impl SupportLabel {
    pub fn vertex(v: &str, shift: i64) -> Self {
        SupportLabel {
            support: Support::Vertex(v.to_string()),
            shift,
        }
    }

    pub fn cycle<S: AsRef<str>>(arrows: &[S], shift: i64) -> Self {
        SupportLabel {
            support: Support::Cycle(CycClass::new(arrows)),
            shift,
        }
    }
}

impl fmt::Display for SupportLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.support, self.shift)
    }
}

impl GradedQuiver {
    /// Checks a traversal and returns the vertex indices it starts each step from.
    pub fn traversal_vertices(&self, gamma: &CycleTraversal) -> Result<Vec<usize>> {
        if gamma.steps.is_empty() {
            return Err(Error::InvalidCycle("empty traversal".into()));
        }
        let mut starts = Vec::new();
        let mut arrows = HashSet::new();
        let mut prev_end = None;
        for (id, dir) in &gamma.steps {
            let e = self.arrow_index(id)?;
            if !arrows.insert(e) {
                return Err(Error::InvalidCycle(format!("arrow {id:?} is traversed twice")));
            }
            let (s, t) = self.ends(e);
            let (from, to) = match dir {
                Direction::Forward => (s, t),
                Direction::Backward => (t, s),
            };
            if let Some(p) = prev_end {
                if p != from {
                    return Err(Error::InvalidCycle(format!("step {id:?} does not continue the walk")));
                }
            }
            starts.push(from);
            prev_end = Some(to);
        }
        if prev_end != Some(starts[0]) {
            return Err(Error::InvalidCycle("the walk does not close up".into()));
        }
        let distinct: HashSet<usize> = starts.iter().copied().collect();
        if distinct.len() != starts.len() {
            return Err(Error::InvalidCycle("a vertex repeats before the walk closes".into()));
        }
        Ok(starts)
    }

    /// `|γ|`: forward steps contribute `d_e`, backward steps `2 − n − d_e`.
    pub fn cycle_degree(&self, gamma: &CycleTraversal) -> Result<i64> {
        self.traversal_vertices(gamma)?;
        let mut total = 0;
        for (id, dir) in &gamma.steps {
            let e = self.arrow_index(id)?;
            total += match dir {
                Direction::Forward => self.degree(e),
                Direction::Backward => self.dual_degree(e),
            };
        }
        Ok(total)
    }

    /// Simple directed cycles of degree-0 arrows as arrow-index sequences, each starting
    /// at its least vertex (Johnson's algorithm on the arrow multigraph).
    pub(crate) fn zero_cycle_indices(&self) -> Vec<Vec<usize>> {
        let nv = self.num_vertices();
        let zero = self.zero_arrows();
        let mut out = Vec::new();
        for s in 0..nv {
            let allowed: Vec<bool> = (0..nv).map(|v| v >= s).collect();
            let comp = scc_of(self, &zero, &allowed, s);
            let mut out_arrows: Vec<Vec<usize>> = vec![Vec::new(); nv];
            for &e in &zero {
                let (a, b) = self.ends(e);
                if comp[a] && comp[b] {
                    out_arrows[a].push(e);
                }
            }
            if out_arrows[s].is_empty() {
                continue;
            }
            let mut state = Johnson {
                q: self,
                s,
                out_arrows: &out_arrows,
                blocked: vec![false; nv],
                blist: vec![Vec::new(); nv],
                stack: Vec::new(),
                found: Vec::new(),
            };
            state.circuit(s);
            out.extend(state.found);
        }
        out
    }

    /// All degree-0 cycles, canonicalized at their least vertex.
    pub fn zero_cycles(&self) -> Result<Vec<CycleTraversal>> {
        self.require_window()?;
        Ok(self
            .zero_cycle_indices()
            .into_iter()
            .map(|c| CycleTraversal::forward(&c.iter().map(|&e| self.arrow_id(e)).collect::<Vec<_>>()))
            .collect())
    }

    /// Distinct connected unions of degree-0 cycles, sorted by (size, arrow ids).
    pub fn cyc_classes(&self, budget: usize) -> Result<Vec<CycClass>> {
        self.require_window()?;
        let cycles: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = self
            .zero_cycle_indices()
            .into_iter()
            .map(|c| {
                let arrows: BTreeSet<usize> = c.iter().copied().collect();
                let verts = self.arrow_vertices(&arrows);
                (arrows, verts)
            })
            .collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for (a, v) in &cycles {
            if seen.insert(a.clone()) {
                queue.push_back((a.clone(), v.clone()));
            }
        }
        if seen.len() > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        while let Some((arrows, verts)) = queue.pop_front() {
            for (ca, cv) in &cycles {
                if ca.is_subset(&arrows) || cv.is_disjoint(&verts) {
                    continue;
                }
                let union: BTreeSet<usize> = arrows.union(ca).copied().collect();
                if seen.contains(&union) {
                    continue;
                }
                seen.insert(union.clone());
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let uv = verts.union(cv).copied().collect();
                queue.push_back((union, uv));
            }
        }
        let mut classes: Vec<BTreeSet<usize>> = seen.into_iter().collect();
        classes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(classes
            .into_iter()
            .map(|s| CycClass {
                arrows: s.iter().map(|&e| self.arrow_id(e).to_string()).collect(),
            })
            .collect())
    }

    pub(crate) fn arrow_vertices(&self, arrows: &BTreeSet<usize>) -> BTreeSet<usize> {
        arrows
            .iter()
            .flat_map(|&e| {
                let (s, t) = self.ends(e);
                [s, t]
            })
            .collect()
    }

    /// Whether `arrows` is the arrow set of some cycle class, decided without enumeration:
    /// nonempty, all degree 0, connected, and every arrow inside one strongly connected
    /// component of the sub-quiver it spans.
    pub fn is_cyc_support<S: AsRef<str>>(&self, arrows: &[S]) -> Result<bool> {
        let mut set = BTreeSet::new();
        for a in arrows {
            set.insert(self.arrow_index(a.as_ref())?);
        }
        Ok(self.is_cyc_support_idx(&set))
    }

    pub(crate) fn is_cyc_support_idx(&self, set: &BTreeSet<usize>) -> bool {
        if set.is_empty() || set.iter().any(|&e| self.degree(e) != 0) {
            return false;
        }
        let nv = self.num_vertices();
        let verts = self.arrow_vertices(set);
        // undirected connectivity
        let mut seen = BTreeSet::new();
        let start = *verts.iter().next().unwrap();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(u) = stack.pop() {
            for &e in set {
                let (s, t) = self.ends(e);
                for (a, b) in [(s, t), (t, s)] {
                    if a == u && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
        }
        if seen != verts {
            return false;
        }
        let reach = |from: usize| -> Vec<bool> {
            let mut r = vec![false; nv];
            r[from] = true;
            let mut st = vec![from];
            while let Some(u) = st.pop() {
                for &e in set {
                    let (s, t) = self.ends(e);
                    if s == u && !r[t] {
                        r[t] = true;
                        st.push(t);
                    }
                }
            }
            r
        };
        set.iter().all(|&e| {
            let (s, t) = self.ends(e);
            reach(t)[s]
        })
    }

    /// 𝔹: every vertex followed by every cycle class.
    pub fn bset(&self, budget: usize) -> Result<Vec<Support>> {
        let mut out: Vec<Support> = self.vertices().iter().map(|v| Support::Vertex(v.id.clone())).collect();
        out.extend(self.cyc_classes(budget)?.into_iter().map(Support::Cycle));
        Ok(out)
    }
}

/// Vertices in the strongly connected component of `s` within the degree-0 sub-quiver
/// restricted to `allowed`.
fn scc_of(q: &GradedQuiver, arrows: &[usize], allowed: &[bool], s: usize) -> Vec<bool> {
    let nv = q.num_vertices();
    let walk = |forward: bool| -> Vec<bool> {
        let mut r = vec![false; nv];
        r[s] = true;
        let mut st = vec![s];
        while let Some(u) = st.pop() {
            for &e in arrows {
                let (a, b) = q.ends(e);
                let (from, to) = if forward { (a, b) } else { (b, a) };
                if from == u && allowed[to] && !r[to] {
                    r[to] = true;
                    st.push(to);
                }
            }
        }
        r
    };
    let f = walk(true);
    let b = walk(false);
    (0..nv).map(|v| f[v] && b[v]).collect()
}

struct Johnson<'a> {
    q: &'a GradedQuiver,
    s: usize,
    out_arrows: &'a [Vec<usize>],
    blocked: Vec<bool>,
    blist: Vec<Vec<usize>>,
    stack: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        while let Some(w) = self.blist[u].pop() {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let mut closed = false;
        self.blocked[v] = true;
        for &e in &self.out_arrows[v] {
            let (_, w) = self.q.ends(e);
            if w == self.s {
                let mut cyc = self.stack.clone();
                cyc.push(e);
                self.found.push(cyc);
                closed = true;
            } else if !self.blocked[w] {
                self.stack.push(e);
                if self.circuit(w) {
                    closed = true;
                }
                self.stack.pop();
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &e in &self.out_arrows[v] {
                let (_, w) = self.q.ends(e);
                if !self.blist[w].contains(&v) {
                    self.blist[w].push(v);
                }
            }
        }
        closed
    }
}
