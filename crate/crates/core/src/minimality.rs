//! Level tests, the minimality and root criteria, Whitehead reduction and the
//! automorphic conjugacy decision.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automorphism::{canonical_with_witness, Automorphism, OneLetterAut, Permutation};
use crate::error::{Error, Result};
use crate::graph::level_images;
use crate::word::{cyclic_reduce, is_alternating, pair_counts, CyclicWord, Letter, Word};

/// Cyclic counts of the sixteen ordered letter pairs.
struct PairTable([[usize; 4]; 4]);

impl PairTable {
    fn of(w: &CyclicWord) -> PairTable {
        let mut table = [[0usize; 4]; 4];
        let n = w.len();
        if n >= 2 {
            for i in 0..n {
                table[w.at(i).index() as usize][w.at(i + 1).index() as usize] += 1;
            }
        }
        PairTable(table)
    }

    /// `(uv)_w`: occurrences of `uv` and `v̄ū`.
    fn count(&self, u: Letter, v: Letter) -> usize {
        self.0[u.index() as usize][v.index() as usize]
            + self.0[v.inverse().index() as usize][u.inverse().index() as usize]
    }
}

/// Level test by direct image length; valid for every length.
pub fn is_level_direct(phi: OneLetterAut, w: &CyclicWord) -> bool {
    phi.apply_cyclic(w).len() == w.len()
}

/// `({y}, x)` is level on `w` iff `(yx̄)_w = (yx)_w + (yy)_w`, for `|w| ≥ 2`.
/// Shorter words fall back to [`is_level_direct`].
pub fn is_level(phi: OneLetterAut, w: &CyclicWord) -> bool {
    if w.len() < 2 {
        return is_level_direct(phi, w);
    }
    let table = PairTable::of(w);
    let (y, x) = (phi.y(), phi.x());
    table.count(y, x.inverse()) == table.count(y, x) + table.count(y, y)
}

/// `|(ab)_w − (ab̄)_w| ≤ min((aa)_w, (bb)_w)`.
pub fn is_minimal(w: &CyclicWord) -> bool {
    let counts = pair_counts(w);
    counts.mixed_difference().unsigned_abs() as usize <= counts.aa.min(counts.bb)
}

/// Minimality by definition: no principal automorphism shortens `w`.
pub fn is_minimal_definitional(w: &CyclicWord) -> bool {
    OneLetterAut::PRINCIPAL
        .iter()
        .all(|phi| phi.apply_cyclic(w).len() >= w.len())
}

/// `|(ab)_w − (ab̄)_w| = (aa)_w = (bb)_w`.
///
/// Single letters satisfy the equalities vacuously but behave like the
/// non-root double loop (only two principal automorphisms are level on them),
/// so length one is excluded.
pub fn is_root(w: &CyclicWord) -> bool {
    if w.len() == 1 {
        return false;
    }
    let counts = pair_counts(w);
    counts.mixed_difference().unsigned_abs() as usize == counts.aa && counts.aa == counts.bb
}

/// Result of [`minimize`]: the minimal word and the principal automorphisms
/// applied, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimization {
    pub word: CyclicWord,
    pub trace: Vec<OneLetterAut>,
}

/// Greedy Whitehead reduction: repeatedly apply the lowest-index principal
/// automorphism that strictly shortens the word.
pub fn minimize(w: &CyclicWord) -> Minimization {
    let mut current = w.clone();
    let mut trace = Vec::new();
    'outer: loop {
        for phi in OneLetterAut::PRINCIPAL {
            let image = phi.apply_cyclic(&current);
            if image.len() < current.len() {
                current = image;
                trace.push(phi);
                continue 'outer;
            }
        }
        return Minimization { word: current, trace };
    }
}

/// Cyclically reduces an arbitrary word, then minimizes it.
pub fn minimize_word(w: &Word) -> Minimization {
    minimize(&cyclic_reduce(w).0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelProfile {
    pub length: usize,
    /// Indexed by principal index minus one.
    pub level_flags: [bool; 4],
    pub is_minimal: bool,
    pub is_root: bool,
    pub is_alternating: bool,
}

impl LevelProfile {
    pub fn outdegree(&self) -> usize {
        self.level_flags.iter().filter(|&&f| f).count()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let level = self.outdegree();
        let violation = |what: &str| Err(Error::Violation(format!("{what}: {self:?}")));
        if self.is_root && !self.is_alternating && level != 2 {
            return violation("non-alternating root word must have exactly two level automorphisms");
        }
        if self.is_alternating && self.is_minimal && self.length != 1 && level != 4 {
            return violation("alternating minimal word must have four level automorphisms");
        }
        if self.is_minimal && !self.is_root && level > 2 {
            return violation("non-root minimal word has more than two level automorphisms");
        }
        Ok(())
    }
}

pub fn level_profile(w: &CyclicWord) -> Result<LevelProfile> {
    if !is_minimal(w) {
        return Err(Error::NotMinimal(w.to_string()));
    }
    let mut level_flags = [false; 4];
    for (flag, phi) in level_flags.iter_mut().zip(OneLetterAut::PRINCIPAL) {
        *flag = is_level(phi, w);
    }
    let profile = LevelProfile {
        length: w.len(),
        level_flags,
        is_minimal: true,
        is_root: is_root(w),
        is_alternating: is_alternating(w),
    };
    profile.check_invariants()?;
    Ok(profile)
}

/// One move of a conjugacy witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessStep {
    Aut(OneLetterAut),
    Perm(Permutation),
    /// Rotate left by this many letters.
    Rotate(usize),
}

impl WitnessStep {
    pub fn apply(&self, w: &CyclicWord) -> CyclicWord {
        match self {
            WitnessStep::Aut(phi) => phi.apply_cyclic(w),
            WitnessStep::Perm(pi) => pi.map_cyclic(w),
            WitnessStep::Rotate(k) => w.rotated(*k),
        }
    }
}

impl fmt::Display for WitnessStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessStep::Aut(phi) => phi.fmt(f),
            WitnessStep::Perm(pi) => pi.fmt(f),
            WitnessStep::Rotate(k) => write!(f, "R{k}"),
        }
    }
}

impl FromStr for WitnessStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<WitnessStep> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix('R') {
            return k
                .parse()
                .map(WitnessStep::Rotate)
                .map_err(|_| Error::AutomorphismSyntax(s.to_string()));
        }
        if s.starts_with('P') {
            return s.parse().map(WitnessStep::Perm);
        }
        s.parse().map(WitnessStep::Aut)
    }
}

/// Applies witness steps left to right.
pub fn replay(start: &CyclicWord, steps: &[WitnessStep]) -> CyclicWord {
    steps.iter().fold(start.clone(), |w, step| step.apply(&w))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugacy {
    pub conjugate: bool,
    /// When conjugate: replaying these steps on the cyclic reduction of the
    /// first word yields exactly the cyclic reduction of the second.
    pub witness: Option<Vec<WitnessStep>>,
}

/// Decides whether `w` and `v` lie in the same automorphic conjugacy class.
pub fn are_conjugate(w: &Word, v: &Word) -> Conjugacy {
    let not_conjugate = Conjugacy {
        conjugate: false,
        witness: None,
    };
    let (cw, _) = cyclic_reduce(w);
    let (cv, _) = cyclic_reduce(v);
    let mw = minimize(&cw);
    let mv = minimize(&cv);
    let n = mw.word.len();
    if n != mv.word.len() {
        return not_conjugate;
    }
    let (start, pi_w, rot_w) = canonical_with_witness(&mw.word);
    let (goal, pi_v, rot_v) = canonical_with_witness(&mv.word);

    // Breadth-first search over the class graph, remembering how each vertex
    // was reached from its parent.
    let mut parent: HashMap<CyclicWord, Option<(CyclicWord, [WitnessStep; 3])>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start.word().clone(), None);
    queue.push_back(start.word().clone());
    while let Some(rep) = queue.pop_front() {
        if &rep == goal.word() {
            break;
        }
        for (i, image) in level_images(&rep).into_iter().enumerate() {
            let Some((target, pi, rot)) = image else { continue };
            let target = target.into_word();
            if !parent.contains_key(&target) {
                let steps = [
                    WitnessStep::Aut(OneLetterAut::PRINCIPAL[i]),
                    WitnessStep::Perm(pi),
                    WitnessStep::Rotate(rot),
                ];
                parent.insert(target.clone(), Some((rep.clone(), steps)));
                queue.push_back(target);
            }
        }
    }
    if !parent.contains_key(goal.word()) {
        return not_conjugate;
    }

    let mut path = Vec::new();
    let mut cursor = goal.word().clone();
    while let Some(Some((prev, steps))) = parent.get(&cursor) {
        path.push(*steps);
        cursor = prev.clone();
    }
    path.reverse();

    let mut witness: Vec<WitnessStep> = mw.trace.iter().map(|&phi| WitnessStep::Aut(phi)).collect();
    witness.push(WitnessStep::Perm(pi_w));
    witness.push(WitnessStep::Rotate(rot_w));
    witness.extend(path.into_iter().flatten());
    if n > 0 {
        witness.push(WitnessStep::Rotate((n - rot_v % n) % n));
    }
    witness.push(WitnessStep::Perm(pi_v.inverse()));
    witness.extend(mv.trace.iter().rev().map(|phi| WitnessStep::Aut(phi.inverse())));

    let reached = replay(&cw, &witness);
    let rotation = reached
        .rotations()
        .position(|r| r == cv)
        .expect("witness reaches a rotation of the target");
    witness.push(WitnessStep::Rotate(rotation));
    witness.retain(|step| !matches!(step, WitnessStep::Rotate(0)) && *step != WitnessStep::Perm(Permutation::IDENTITY));
    debug_assert_eq!(replay(&cw, &witness), cv);
    Conjugacy {
        conjugate: true,
        witness: Some(witness),
    }
}
