//! Exhaustive enumeration of minimal words modulo `J` and of the classes
//! they form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::{canonical_mod_j, Automorphism, JCanonicalForm, OneLetterAut, Permutation};
use crate::error::{Error, Result};
use crate::graph::{ClassGraph, Edge, GraphType};
use crate::minimality::{is_level, is_minimal, level_profile};
use crate::word::{is_alternating, weight, CyclicWord, Letter};

/// Longest word length that fits the packed representation.
pub const MAX_LENGTH: usize = 31;

/// Packs a word two bits per letter, first letter most significant, so that
/// for a fixed length numeric order is lexicographic order.
fn pack(letters: &[Letter]) -> u64 {
    letters.iter().fold(0, |acc, l| acc << 2 | l.index() as u64)
}

fn unpack(key: u64, n: usize) -> CyclicWord {
    let letters = (0..n)
        .map(|i| Letter::from_index(((key >> (2 * (n - 1 - i))) & 3) as u8))
        .collect();
    CyclicWord::from_letters_unchecked(letters)
}

/// A rotation start and permutation whose image still agrees with the
/// prefix built so far.
#[derive(Clone, Copy)]
struct Tie {
    perm: [Letter; 4],
    start: usize,
}

fn perm_table(pi: Permutation) -> [Letter; 4] {
    Letter::ALL.map(|l| pi.map(l))
}

struct Generator {
    n: usize,
    perms: Vec<[Letter; 4]>,
}

struct Frame {
    prefix: Vec<Letter>,
    ties: Vec<Tie>,
}

impl Generator {
    fn new(n: usize) -> Generator {
        Generator {
            n,
            perms: Permutation::ALL.into_iter().map(perm_table).collect(),
        }
    }

    /// Extends `frame` by `c`, or `None` if some permutation image of some
    /// rotation is already smaller.
    fn extend(&self, frame: &Frame, c: Letter) -> Option<Frame> {
        let len = frame.prefix.len();
        if let Some(&last) = frame.prefix.last() {
            if c == last.inverse() {
                return None;
            }
        } else if c != Letter::A {
            return None;
        }
        let mut prefix = frame.prefix.clone();
        prefix.push(c);
        let mut ties = Vec::with_capacity(frame.ties.len() + 8);
        for tie in &frame.ties {
            let image = tie.perm[c.index() as usize];
            let against = prefix[len - tie.start];
            if image < against {
                return None;
            }
            if image == against {
                ties.push(*tie);
            }
        }
        for (i, perm) in self.perms.iter().enumerate() {
            if perm[c.index() as usize] == prefix[0] && !(i == 0 && len == 0) {
                ties.push(Tie {
                    perm: *perm,
                    start: len,
                });
            }
        }
        Some(Frame { prefix, ties })
    }

    /// Closes a full-length candidate cyclically.
    fn accept(&self, frame: &Frame) -> bool {
        let w = &frame.prefix;
        let n = self.n;
        if n > 1 && w[n - 1] == w[0].inverse() {
            return false;
        }
        for tie in &frame.ties {
            for k in 0..tie.start {
                let image = tie.perm[w[k].index() as usize];
                let against = w[n - tie.start + k];
                if image < against {
                    return false;
                }
                if image > against {
                    break;
                }
            }
        }
        is_minimal(&CyclicWord::from_letters_unchecked(w.clone()))
    }

    fn frames_at_depth(&self, depth: usize) -> Vec<Frame> {
        let mut frames = vec![Frame {
            prefix: Vec::new(),
            ties: Vec::new(),
        }];
        for _ in 0..depth {
            frames = frames
                .iter()
                .flat_map(|f| Letter::ALL.into_iter().filter_map(move |c| self.extend(f, c)))
                .collect();
        }
        frames
    }

    fn leaves(&self, frame: Frame, out: &mut Vec<u64>) {
        if frame.prefix.len() == self.n {
            if self.accept(&frame) {
                out.push(pack(&frame.prefix));
            }
            return;
        }
        for c in Letter::ALL {
            if let Some(next) = self.extend(&frame, c) {
                self.leaves(next, out);
            }
        }
    }
}

fn thread_pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
}

/// Packed keys of all canonical minimal words of length `n`, ascending.
fn minimal_keys(n: usize, pool: &rayon::ThreadPool) -> Vec<u64> {
    assert!(n <= MAX_LENGTH, "length {n} exceeds {MAX_LENGTH}");
    if n == 0 {
        return vec![0];
    }
    let generator = Generator::new(n);
    let frames = generator.frames_at_depth(n.min(6));
    pool.install(|| {
        frames
            .into_par_iter()
            .map(|frame| {
                let mut out = Vec::new();
                generator.leaves(frame, &mut out);
                out
            })
            .collect::<Vec<_>>()
            .concat()
    })
}

/// Every `J`-canonical minimal word of length `n`, in ascending order.
pub fn enumerate_minimal(n: usize, workers: usize) -> Vec<JCanonicalForm> {
    minimal_keys(n, &thread_pool(workers))
        .into_iter()
        .map(|key| canonical_mod_j(&unpack(key, n)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub id: String,
    pub length: usize,
    pub size: usize,
    pub weight: usize,
    #[serde(rename = "type")]
    pub graph_type: GraphType,
    pub representatives: Vec<CyclicWord>,
}

#[derive(Clone, Debug)]
pub struct EnumeratedClass {
    pub record: ClassRecord,
    pub graph: ClassGraph,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let parent = self.0[x as usize];
            self.0[x as usize] = self.0[parent as usize];
            x = parent;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi as usize] = lo;
        }
    }
}

const NO_EDGE: u32 = u32::MAX;

/// All classes of length `n`, sorted by size then least representative, with
/// their graphs. Every class is checked against the structure theorems; a
/// failure is reported as [`Error::Violation`].
pub fn enumerate_classes_detailed(n: usize, workers: usize) -> Result<Vec<EnumeratedClass>> {
    let pool = thread_pool(workers);
    let keys = minimal_keys(n, &pool);
    let targets: Vec<[u32; 4]> = pool.install(|| {
        keys.par_iter()
            .map(|&key| {
                let w = unpack(key, n);
                let mut out = [NO_EDGE; 4];
                for (slot, phi) in out.iter_mut().zip(OneLetterAut::PRINCIPAL) {
                    if is_level(phi, &w) {
                        let image = canonical_mod_j(&phi.apply_cyclic(&w));
                        let index = keys.binary_search(&pack(image.word().letters())).map_err(|_| {
                            Error::Violation(format!("level image {image} of {w} is not a listed minimal word"))
                        })?;
                        *slot = index as u32;
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut uf = UnionFind::new(keys.len());
    for (i, row) in targets.iter().enumerate() {
        for &t in row.iter().filter(|&&t| t != NO_EDGE) {
            uf.union(i as u32, t);
        }
    }
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut slot_of_root = vec![u32::MAX; keys.len()];
    for i in 0..keys.len() as u32 {
        let root = uf.find(i) as usize;
        if slot_of_root[root] == u32::MAX {
            slot_of_root[root] = members.len() as u32;
            members.push(Vec::new());
        }
        members[slot_of_root[root] as usize].push(i);
    }

    let mut classes: Vec<EnumeratedClass> = pool.install(|| {
        members
            .par_iter()
            .map(|class| build_class(n, class, &keys, &targets))
            .collect::<Result<Vec<_>>>()
    })?;
    classes.sort_by(|a, b| {
        (a.record.size, &a.record.representatives[0]).cmp(&(b.record.size, &b.record.representatives[0]))
    });
    for (k, class) in classes.iter_mut().enumerate() {
        class.record.id = format!("{n}.{}", k + 1);
    }
    check_length(n, &classes)?;
    Ok(classes)
}

pub fn enumerate_classes(n: usize, workers: usize) -> Result<Vec<ClassRecord>> {
    Ok(enumerate_classes_detailed(n, workers)?
        .into_iter()
        .map(|c| c.record)
        .collect())
}

fn build_class(n: usize, class: &[u32], keys: &[u64], targets: &[[u32; 4]]) -> Result<EnumeratedClass> {
    let vertices: Vec<CyclicWord> = class.iter().map(|&i| unpack(keys[i as usize], n)).collect();
    let local = |global: u32| class.binary_search(&global).expect("edges stay inside a class");
    let mut edges = Vec::new();
    for (from, &i) in class.iter().enumerate() {
        for (p, &t) in targets[i as usize].iter().enumerate() {
            if t != NO_EDGE {
                edges.push(Edge {
                    from,
                    to: local(t),
                    principal: p as u8 + 1,
                });
            }
        }
    }
    let graph = ClassGraph::from_parts(vertices, edges)?;
    let w = weight(&graph.vertices()[0]);
    check_class(&graph, w)?;
    let record = ClassRecord {
        id: String::new(),
        length: n,
        size: graph.size(),
        weight: w,
        graph_type: graph.graph_type(),
        representatives: graph.vertices().to_vec(),
    };
    Ok(EnumeratedClass { record, graph })
}

fn check_class(graph: &ClassGraph, w: usize) -> Result<()> {
    let n = graph.length();
    let first = &graph.vertices()[0];
    let fail = |what: String| Err(Error::Violation(format!("class of {first}: {what}")));
    for v in graph.vertices() {
        if weight(v) != w {
            return fail(format!("weight of {v} differs from {w}"));
        }
        level_profile(v)?;
    }
    if graph.vertices().iter().filter(|v| is_alternating(v)).count() > 1 {
        return fail("more than one alternating vertex".into());
    }
    if graph.is_root() {
        if n % 4 != 0 {
            return fail(format!("root class at length {n}"));
        }
        if ![1, 2, 3, 5].contains(&graph.size()) {
            return fail(format!("root class of size {}", graph.size()));
        }
    }
    if graph.graph_type() == GraphType::P3 && n % 2 == 1 && graph.size() != 1 {
        return fail(format!("odd-length P3 class of size {}", graph.size()));
    }
    if n >= 9 && graph.size() > n - 5 {
        return fail(format!("size {} exceeds {}", graph.size(), n - 5));
    }
    Ok(())
}

fn check_length(n: usize, classes: &[EnumeratedClass]) -> Result<()> {
    let r4 = classes.iter().filter(|c| c.record.graph_type == GraphType::R4).count();
    let expected = usize::from(n % 4 == 0);
    if r4 != expected {
        return Err(Error::Violation(format!("{r4} R4 classes at length {n}")));
    }
    Ok(())
}
