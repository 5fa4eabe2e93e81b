//! Standard bases of two-sided ideals in `KQ / 𝔪^{D+1}`.
//!
//! The leading term of an element is its smallest path in the degree-lex
//! order, so reduction only ever creates longer paths and truncation at `D`
//! never touches a leading term. Obstructions are overlaps of leading words of
//! length at most `D`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use rustc_hash::FxHashMap;
use std::ops::Bound;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::coeff::Q;
use super::trie::Trie;
use crate::path::Path;
use crate::quiver::{Quiver, Vertex};

pub(crate) type Poly = BTreeMap<Path, Q>;

type MemoMap = FxHashMap<Path, (usize, usize, Arc<Poly>)>;

/// `x = Σ c · u ∂_{gen} v` modulo paths longer than the cap.
pub(crate) type Trace = HashMap<(Path, usize, Path), Q>;

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub poly: Poly,
    pub lt: Path,
    pub trace: Option<Trace>,
}

#[derive(Clone, Debug)]
enum Task {
    Insert(Poly, Option<Trace>),
    Overlap { i: usize, j: usize, k: usize },
}

/// Normal forms of single paths, stamped with the number of insertions they saw
/// and the degree budget they were computed within.
/// A stale entry is still congruent to its path and only needs further reduction.
#[derive(Default)]
struct Memo(Mutex<MemoMap>);

impl Clone for Memo {
    fn clone(&self) -> Self {
        Memo(Mutex::new(self.0.lock().expect("memo lock").clone()))
    }
}

impl std::fmt::Debug for Memo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Memo({} paths)", self.0.lock().map_or(0, |m| m.len()))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Engine {
    pub quiver: Arc<Quiver>,
    pub cap: usize,
    pub elems: Vec<Elem>,
    pub active: Vec<bool>,
    forward: Trie,
    backward: Trie,
    dead: HashMap<Vertex, usize>,
    gen_min_degree: Vec<usize>,
    tracing: bool,
    version: usize,
    memo: Memo,
    zero: Arc<Poly>,
}

fn add_to(f: &mut Poly, p: Path, c: Q) {
    if c.is_zero() {
        return;
    }
    match f.entry(p) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn trace_add(t: &mut Trace, key: (Path, usize, Path), c: Q) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(key.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&key);
    }
}

impl Engine {
    /// Runs completion on the given generators.
    pub fn new(quiver: Arc<Quiver>, cap: usize, generators: &[Poly], tracing: bool) -> Self {
        let gen_min_degree = generators.iter().map(|g| g.keys().next().map_or(usize::MAX, Path::len)).collect();
        let mut e = Engine {
            quiver,
            cap,
            elems: Vec::new(),
            active: Vec::new(),
            forward: Trie::default(),
            backward: Trie::default(),
            dead: HashMap::new(),
            gen_min_degree,
            tracing,
            version: 0,
            memo: Memo::default(),
            zero: Arc::new(Poly::new()),
        };
        let mut heap = BinaryHeap::new();
        let mut tasks = Vec::new();
        for (gi, g) in generators.iter().enumerate() {
            let Some(lt) = g.keys().next() else { continue };
            let trace = tracing.then(|| {
                let mut t = Trace::new();
                t.insert((Path::trivial(lt.source()), gi, Path::trivial(lt.target())), Q::one());
                t
            });
            heap.push(Reverse((lt.len(), tasks.len())));
            tasks.push(Task::Insert(g.clone(), trace));
        }
        while let Some(Reverse((_, t))) = heap.pop() {
            let task = std::mem::replace(&mut tasks[t], Task::Overlap { i: 0, j: 0, k: 0 });
            let (f, trace) = match task {
                Task::Insert(f, tr) => (f, tr),
                Task::Overlap { i, j, k } => {
                    if !e.active[i] || !e.active[j] {
                        continue;
                    }
                    e.s_poly(i, j, k)
                }
            };
            let (f, trace) = e.reduce(f, trace);
            if f.is_empty() {
                continue;
            }
            for task in e.insert(f, trace) {
                let deg = match &task {
                    Task::Insert(f, _) => f.keys().next().map_or(0, Path::len),
                    Task::Overlap { i, j, k } => e.elems[*i].lt.len() + e.elems[*j].lt.len() - k,
                };
                heap.push(Reverse((deg, tasks.len())));
                tasks.push(task);
            }
        }
        e
    }

    /// Position of a leading word dividing `w`: `(element, start arrow)`.
    pub fn divisor(&self, w: &Path) -> Option<(usize, usize)> {
        if !self.dead.is_empty() {
            if let Some(&j) = self.dead.get(&w.source()) {
                return Some((j, 0));
            }
            for (i, &a) in w.arrows().iter().enumerate() {
                if let Some(&j) = self.dead.get(&self.quiver.target(a)) {
                    return Some((j, i + 1));
                }
            }
        }
        let arrows = w.arrows();
        (0..arrows.len()).find_map(|s| self.forward.prefix_of(arrows[s..].iter().copied()).map(|(j, _)| (j, s)))
    }

    /// `true` when some leading word is a suffix of `w`.
    pub fn has_divisor_suffix(&self, w: &Path) -> bool {
        if self.dead.contains_key(&w.target()) {
            return true;
        }
        self.backward.prefix_of(w.arrows().iter().rev().copied()).is_some()
    }

    pub fn is_dead(&self, v: Vertex) -> bool {
        self.dead.contains_key(&v)
    }

    fn sandwich(&self, u: &Path, g: &Poly, v: &Path, c: &Q, f: &mut Poly) {
        for (p, d) in g {
            if u.len() + p.len() + v.len() > self.cap {
                break;
            }
            let up = u.concat(p).expect("composable");
            add_to(f, up.concat(v).expect("composable"), -(c * d));
        }
    }

    fn sandwich_trace(&self, u: &Path, t: &Trace, v: &Path, c: &Q, out: &mut Trace) {
        for ((a, gi, b), d) in t {
            if u.len() + a.len() + b.len() + v.len() + self.gen_min_degree[*gi] > self.cap {
                continue;
            }
            let key = (u.concat(a).expect("composable"), *gi, b.concat(v).expect("composable"));
            trace_add(out, key, -(c * d));
        }
    }

    /// Full reduction. Without a trace, path normal forms are memoized.
    pub fn reduce(&self, f: Poly, trace: Option<Trace>) -> (Poly, Option<Trace>) {
        if trace.is_some() {
            return self.sweep(f, trace);
        }
        let mut memo = self.memo.0.lock().expect("memo lock");
        let out = self.combine(&f, self.cap, &mut memo);
        (Arc::try_unwrap(out).unwrap_or_else(|a| (*a).clone()), None)
    }

    fn combine(&self, f: &Poly, budget: usize, memo: &mut MemoMap) -> Arc<Poly> {
        let mut out = Poly::new();
        for (t, c) in f {
            let n = self.nf_path(t, budget, memo);
            if c.is_one() && f.len() == 1 {
                return n;
            }
            for (p, d) in n.iter() {
                add_to(&mut out, p.clone(), c * d);
            }
        }
        if out.is_empty() {
            return self.zero.clone();
        }
        Arc::new(out)
    }

    fn touches_dead(&self, w: &Path) -> bool {
        !self.dead.is_empty()
            && (self.is_dead(w.source()) || w.arrows().iter().any(|&a| self.is_dead(self.quiver.target(a))))
    }

    /// A reduced element congruent to `w` modulo the ideal and `𝔪^{budget+1}`.
    ///
    /// Reduction runs one arrow at a time from the left, so only products of a
    /// reduced path and an arrow are memoized. Each prefix gets the budget left
    /// over by the arrows still to come.
    fn nf_path(&self, w: &Path, budget: usize, memo: &mut MemoMap) -> Arc<Poly> {
        if w.len() > budget || self.touches_dead(w) {
            return self.zero.clone();
        }
        let n = w.len();
        let mut x = self.step(&Path::trivial(w.source()), budget - n, memo);
        for (k, &a) in w.arrows().iter().enumerate() {
            if x.is_empty() {
                break;
            }
            let room = budget - n + k + 1;
            let mut next = Poly::new();
            for (b, c) in x.iter() {
                if b.len() + 1 > room {
                    continue;
                }
                let Some(ba) = b.concat(&Path::arrow(&self.quiver, a)) else { continue };
                let r = self.step(&ba, room, memo);
                if x.len() == 1 && c.is_one() {
                    next = Arc::unwrap_or_clone(r);
                    break;
                }
                for (p, d) in r.iter() {
                    add_to(&mut next, p.clone(), c * d);
                }
            }
            x = Arc::new(next);
        }
        x
    }

    /// Reduced form of `p` within `budget`, typically a reduced path times an arrow.
    fn step(&self, p: &Path, budget: usize, memo: &mut MemoMap) -> Arc<Poly> {
        if p.len() > budget || self.touches_dead(p) {
            return self.zero.clone();
        }
        if let Some((ver, have, old)) = memo.get(p) {
            if *ver == self.version && *have >= budget {
                return old.clone();
            }
            if *have >= budget && !(old.len() == 1 && old.contains_key(p)) {
                let old = old.clone();
                let mut out = Poly::new();
                for (t, c) in old.iter() {
                    if t.len() > budget {
                        continue;
                    }
                    if self.divisor(t).is_none() {
                        add_to(&mut out, t.clone(), c.clone());
                    } else {
                        for (q, d) in self.nf_path(t, budget, memo).iter() {
                            add_to(&mut out, q.clone(), c * d);
                        }
                    }
                }
                let r = if out.is_empty() { self.zero.clone() } else { Arc::new(out) };
                memo.insert(p.clone(), (self.version, budget, r.clone()));
                return r;
            }
        }
        let r = match self.divisor(p) {
            None => Arc::new(Poly::from([(p.clone(), Q::one())])),
            Some((j, s)) => {
                let g = &self.elems[j];
                let u = p.slice(&self.quiver, 0, s);
                let v = p.slice(&self.quiver, s + g.lt.len(), p.len());
                let mut tail = Poly::new();
                for (t, d) in g.poly.iter().skip(1) {
                    if u.len() + t.len() + v.len() > budget {
                        break;
                    }
                    let ut = u.concat(t).expect("composable");
                    add_to(&mut tail, ut.concat(&v).expect("composable"), -d.clone());
                }
                self.combine(&tail, budget, memo)
            }
        };
        let keep = match memo.get(p) {
            Some((ver, have, _)) => *ver != self.version || *have < budget,
            None => true,
        };
        if keep {
            memo.insert(p.clone(), (self.version, budget, r.clone()));
        }
        r
    }

    /// Full reduction in one ascending sweep, carrying the trace along.
    fn sweep(&self, mut f: Poly, mut trace: Option<Trace>) -> (Poly, Option<Trace>) {
        let mut cursor: Option<Path> = None;
        loop {
            let next = match &cursor {
                None => f.keys().next().cloned(),
                Some(c) => f.range((Bound::Excluded(c), Bound::Unbounded)).next().map(|(k, _)| k.clone()),
            };
            let Some(w) = next else { break };
            if let Some((j, s)) = self.divisor(&w) {
                let c = f[&w].clone();
                let g = &self.elems[j];
                let u = w.slice(&self.quiver, 0, s);
                let v = w.slice(&self.quiver, s + g.lt.len(), w.len());
                self.sandwich(&u, &g.poly, &v, &c, &mut f);
                if let (Some(t), Some(gt)) = (trace.as_mut(), g.trace.as_ref()) {
                    self.sandwich_trace(&u, gt, &v, &c, t);
                }
            }
            cursor = Some(w);
        }
        (f, trace)
    }

    fn s_poly(&self, i: usize, j: usize, k: usize) -> (Poly, Option<Trace>) {
        let (gi, gj) = (&self.elems[i], &self.elems[j]);
        let li = gi.lt.len();
        let u = gi.lt.slice(&self.quiver, 0, li - k);
        let v = gj.lt.slice(&self.quiver, k, gj.lt.len());
        let e_u = Path::trivial(u.source());
        let e_v = Path::trivial(v.target());
        let mut f = Poly::new();
        self.sandwich(&e_u, &gi.poly, &v, &-Q::one(), &mut f);
        self.sandwich(&u, &gj.poly, &e_v, &Q::one(), &mut f);
        let trace = if self.tracing {
            let mut t = Trace::new();
            self.sandwich_trace(&e_u, gi.trace.as_ref().unwrap(), &v, &-Q::one(), &mut t);
            self.sandwich_trace(&u, gj.trace.as_ref().unwrap(), &e_v, &Q::one(), &mut t);
            Some(t)
        } else {
            None
        };
        (f, trace)
    }

    fn insert(&mut self, mut f: Poly, mut trace: Option<Trace>) -> Vec<Task> {
        let lc = f.values().next().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = Q::one() / &lc;
            for c in f.values_mut() {
                *c *= &inv;
            }
            if let Some(t) = trace.as_mut() {
                for c in t.values_mut() {
                    *c *= &inv;
                }
            }
        }
        let lt = f.keys().next().unwrap().clone();
        let id = self.elems.len();
        self.version += 1;
        let mut tasks = Vec::new();
        for j in 0..id {
            if self.active[j] && contains_word(&self.quiver, &self.elems[j].lt, &lt) {
                self.deactivate(j);
                tasks.push(Task::Insert(self.elems[j].poly.clone(), self.elems[j].trace.clone()));
            }
        }
        self.elems.push(Elem { poly: f, lt: lt.clone(), trace });
        self.active.push(true);
        if lt.is_trivial() {
            self.dead.insert(lt.source(), id);
            return tasks;
        }
        self.forward.insert(lt.arrows().iter().copied(), id);
        self.backward.insert(lt.arrows().iter().rev().copied(), id);
        for j in 0..=id {
            if !self.active[j] || self.elems[j].lt.is_trivial() {
                continue;
            }
            let lj = &self.elems[j].lt;
            for k in overlaps(lt.arrows(), lj.arrows()) {
                if lt.len() + lj.len() - k <= self.cap {
                    tasks.push(Task::Overlap { i: id, j, k });
                }
            }
            if j != id {
                for k in overlaps(lj.arrows(), lt.arrows()) {
                    if lt.len() + lj.len() - k <= self.cap {
                        tasks.push(Task::Overlap { i: j, j: id, k });
                    }
                }
            }
        }
        tasks
    }

    fn deactivate(&mut self, j: usize) {
        self.active[j] = false;
        let lt = &self.elems[j].lt;
        if lt.is_trivial() {
            self.dead.remove(&lt.source());
        } else {
            self.forward.remove(lt.arrows().iter().copied());
            self.backward.remove(lt.arrows().iter().rev().copied());
        }
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &Path> {
        self.elems.iter().zip(&self.active).filter(|(_, &a)| a).map(|(e, _)| &e.lt)
    }
}

/// Lengths `k` with `1 <= k < min(|x|, |y|)` such that the last `k` letters of `x` start `y`.
fn overlaps(x: &[u32], y: &[u32]) -> Vec<usize> {
    let m = x.len().min(y.len());
    (1..m).filter(|&k| x[x.len() - k..] == y[..k]).collect()
}

/// `true` when the path `big` contains the path `small` as a subpath.
fn contains_word(q: &Quiver, big: &Path, small: &Path) -> bool {
    if small.is_trivial() {
        let v = small.source();
        return big.source() == v || big.arrows().iter().any(|&a| q.target(a) == v);
    }
    big.arrows().windows(small.len()).any(|w| w == small.arrows())
}
