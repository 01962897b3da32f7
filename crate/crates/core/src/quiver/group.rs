//! Todd–Coxeter coset enumeration over the trivial subgroup.

use super::GroupPresentation;

/// Default cap on the number of cosets defined during enumeration.
pub const DEFAULT_COSET_CAP: usize = 200_000;

/// The order of the presented group, or `None` if enumeration exceeds `cap` cosets.
pub fn group_order(g: &GroupPresentation, cap: usize) -> Option<usize> {
    let ngen = g.generators.len();
    if ngen == 0 {
        return Some(1);
    }
    // Column 2i is generator i, column 2i+1 its inverse.
    let relators: Vec<Vec<usize>> = g
        .relators()
        .into_iter()
        .map(|w| w.into_iter().map(|(i, inv)| 2 * i + inv as usize).collect())
        .filter(|w: &Vec<usize>| !w.is_empty())
        .collect();
    let mut t = Table::new(2 * ngen);
    let mut c = 0;
    while c < t.rows.len() {
        if t.live(c) {
            for r in &relators {
                if !t.live(c) {
                    break;
                }
                t.scan_and_fill(c, r);
                if t.rows.len() > cap {
                    return None;
                }
            }
            if t.live(c) {
                for x in 0..2 * ngen {
                    if t.rows[c][x].is_none() {
                        t.define(c, x);
                    }
                }
            }
            if t.rows.len() > cap {
                return None;
            }
        }
        c += 1;
    }
    Some((0..t.rows.len()).filter(|&i| t.live(i)).count())
}

struct Table {
    cols: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
}

fn inv(x: usize) -> usize {
    x ^ 1
}

impl Table {
    fn new(cols: usize) -> Self {
        Table {
            cols,
            rows: vec![vec![None; cols]],
            parent: vec![0],
            queue: Vec::new(),
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> usize {
        let d = self.rows.len();
        self.rows.push(vec![None; self.cols]);
        self.parent.push(d);
        self.rows[c][x] = Some(d);
        self.rows[d][inv(x)] = Some(c);
        d
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let Some(d) = self.rows[g][x] else { continue };
                self.rows[d][inv(x)] = None;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if let Some(m) = self.rows[mu][x] {
                    self.merge(nu, m);
                } else if let Some(n) = self.rows[nu][inv(x)] {
                    self.merge(mu, n);
                } else {
                    self.rows[mu][x] = Some(nu);
                    self.rows[nu][inv(x)] = Some(mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.rows[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize {
                match self.rows[b][inv(w[j as usize])] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                self.rows[f][w[i]] = Some(b);
                self.rows[b][inv(w[i])] = Some(f);
                return;
            }
            self.define(f, w[i]);
        }
    }
}
