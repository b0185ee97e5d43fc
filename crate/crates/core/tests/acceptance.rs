//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fail.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::process::ExitCode;
use std::time::Instant;

use f2orbit_core::census::{diagonal, CensusRow};
use f2orbit_core::enumeration::EnumeratedClass;
use f2orbit_core::{
    are_conjugate, build_graph, canonical_mod_j, conjugate_by_perm, cyclic_reduce, enumerate_classes_detailed,
    free_reduce, is_minimal, is_minimal_definitional, minimize, replay, subword_count, triangle_decompose,
    Automorphism, CyclicWord, GraphType, Letter, OneLetterAut, Permutation, WhiteheadII, Word,
};

const CLASS_TABLE: &str = include_str!("fixtures/class_table.txt");
const TYPE_COUNTS: &str = include_str!("fixtures/type_counts.csv");
const P1_SIZES: &str = include_str!("fixtures/p1_sizes.csv");
const P2_SIZES: &str = include_str!("fixtures/p2_sizes.csv");
const P3_SIZES: &str = include_str!("fixtures/p3_sizes.csv");

const MAX_CENSUS: usize = 14;
const MAX_STRUCTURAL: usize = 12;

type Outcome = Result<String, Vec<String>>;
type Move = Box<dyn Fn(&CyclicWord) -> CyclicWord>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Fixtures {
    /// id -> (type, representatives)
    classes: BTreeMap<String, (GraphType, BTreeSet<String>)>,
    types: BTreeMap<usize, [usize; 10]>,
    paths: [BTreeMap<usize, Vec<usize>>; 3],
}

fn load_fixtures() -> Fixtures {
    let mut classes = BTreeMap::new();
    for line in CLASS_TABLE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
    {
        let mut fields = line.split_whitespace();
        let id = fields.next().unwrap().to_string();
        let ty: GraphType = fields.next().unwrap().parse().unwrap();
        let reps = fields
            .map(|r| if r == "-" { String::new() } else { r.to_string() })
            .collect();
        classes.insert(id, (ty, reps));
    }
    let mut types = BTreeMap::new();
    for line in TYPE_COUNTS.lines().skip(1) {
        let nums: Vec<usize> = line.split(',').map(|f| f.parse().unwrap()).collect();
        types.insert(nums[0], nums[1..].try_into().unwrap());
    }
    let parse_sizes = |text: &str| {
        text.lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
            .map(|l| {
                let nums: Vec<usize> = l.split(',').map(|f| f.trim().parse().unwrap()).collect();
                (nums[0], nums[1..].to_vec())
            })
            .collect::<BTreeMap<_, _>>()
    };
    Fixtures {
        classes,
        types,
        paths: [parse_sizes(P1_SIZES), parse_sizes(P2_SIZES), parse_sizes(P3_SIZES)],
    }
}

fn all_reduced_words(max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in Letter::ALL {
                if w.last().map_or(true, |&p| p != l.inverse()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn cyclic_words(max_len: usize) -> Vec<CyclicWord> {
    all_reduced_words(max_len)
        .into_iter()
        .filter_map(|w| CyclicWord::new(w).ok())
        .collect()
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures)
    }
}

/// Classes are matched by representative set. The id within a length is
/// compared too but only reported: the table orders classes of equal size in
/// a way no letter order reproduces.
fn criterion_1(fx: &Fixtures, by_length: &[Vec<EnumeratedClass>]) -> Outcome {
    let mut failures = Vec::new();
    let by_reps: HashMap<&BTreeSet<String>, (&String, GraphType)> =
        fx.classes.iter().map(|(id, (ty, reps))| (reps, (id, *ty))).collect();
    let (mut seen, mut other_id) = (0, 0);
    for (n, classes) in by_length.iter().enumerate().take(10) {
        let expected = fx.classes.keys().filter(|id| id.starts_with(&format!("{n}."))).count();
        if classes.len() != expected {
            failures.push(format!("n = {n}: {} classes, fixture lists {expected}", classes.len()));
        }
        for c in classes {
            seen += 1;
            let reps: BTreeSet<String> = c.record.representatives.iter().map(|w| w.to_string()).collect();
            match by_reps.get(&reps) {
                None => failures.push(format!("{} {reps:?} not in fixture", c.record.id)),
                Some((id, ty)) => {
                    if *ty != c.record.graph_type {
                        failures.push(format!("{id} {reps:?}: type {} vs fixture {ty}", c.record.graph_type));
                    }
                    if **id != c.record.id {
                        other_id += 1;
                    }
                }
            }
        }
    }
    outcome(
        failures,
        format!("{seen} classes for n <= 9 match by representatives and type ({other_id} numbered differently)"),
    )
}

fn criterion_2(fx: &Fixtures, rows: &[CensusRow]) -> Outcome {
    let failures = rows
        .iter()
        .filter(|r| fx.types[&r.length] != r.type_counts)
        .map(|r| {
            format!(
                "n = {}: {:?} vs fixture {:?}",
                r.length, r.type_counts, fx.types[&r.length]
            )
        })
        .collect();
    outcome(failures, format!("type counts for n <= {MAX_CENSUS} match"))
}

fn criterion_3(fx: &Fixtures, rows: &[CensusRow]) -> Outcome {
    let mut failures = Vec::new();
    for (table, ty) in fx.paths.iter().zip([GraphType::P1, GraphType::P2, GraphType::P3]) {
        for r in rows {
            let observed = r.path_sizes(ty);
            let expected = table.get(&r.length).cloned().unwrap_or_default();
            if observed != expected {
                failures.push(format!("{ty} n = {}: {observed:?} vs fixture {expected:?}", r.length));
            }
        }
    }
    outcome(failures, format!("P1, P2, P3 size tables for n <= {MAX_CENSUS} match"))
}

fn criterion_4(by_length: &[Vec<EnumeratedClass>]) -> Outcome {
    let mut failures = Vec::new();
    for (n, classes) in by_length.iter().enumerate().take(MAX_CENSUS + 1).skip(9) {
        if let Some(c) = classes.iter().find(|c| c.record.size > n - 5) {
            failures.push(format!("{} has size {}", c.record.id, c.record.size));
        }
        let witness: Word = format!("{}baBabb", "a".repeat(n - 6)).parse().unwrap();
        let m = minimize(&cyclic_reduce(&witness).0);
        match build_graph(&m.word) {
            Ok(g) if m.word.len() == n && g.graph_type() == GraphType::P1 && g.size() == n - 5 => {}
            Ok(g) => failures.push(format!(
                "n = {n}: witness gives {} of size {} at length {}",
                g.graph_type(),
                g.size(),
                m.word.len()
            )),
            Err(e) => failures.push(format!("n = {n}: {e}")),
        }
    }
    outcome(
        failures,
        "size <= n - 5 for 9 <= n <= 14; witness family attains n - 5".into(),
    )
}

fn criterion_5(by_length: &[Vec<EnumeratedClass>]) -> Outcome {
    let mut failures = Vec::new();
    for (n, classes) in by_length.iter().enumerate().take(MAX_STRUCTURAL + 1) {
        let r4 = classes.iter().filter(|c| c.record.graph_type == GraphType::R4).count();
        if r4 != usize::from(n % 4 == 0) {
            failures.push(format!("n = {n}: {r4} R4 classes"));
        }
        for c in classes {
            let (g, id) = (&c.graph, &c.record.id);
            if g.is_root() && (![1, 2, 3, 5].contains(&g.size()) || n % 4 != 0) {
                failures.push(format!("{id}: root class of size {} at length {n}", g.size()));
            }
            let mut outdegree = vec![0; g.size()];
            for e in g.edges() {
                outdegree[e.from] += 1;
            }
            let allowed: &[usize] = if g.is_root() { &[2, 4] } else { &[0, 1, 2] };
            if let Some(d) = outdegree.iter().find(|d| !allowed.contains(d)) {
                failures.push(format!("{id}: outdegree {d}"));
            }
            if g.graph_type() == GraphType::P3 && n % 2 == 1 && g.size() != 1 {
                failures.push(format!("{id}: odd-length P3 of size {}", g.size()));
            }
            if g.vertices().iter().any(|v| f2orbit_core::weight(v) != c.record.weight) {
                failures.push(format!("{id}: weight not constant"));
            }
            if g.vertices().iter().filter(|v| f2orbit_core::is_alternating(v)).count() > 1 {
                failures.push(format!("{id}: several alternating vertices"));
            }
        }
    }
    outcome(
        failures,
        format!("all classes for n <= {MAX_STRUCTURAL} satisfy the structure theorems"),
    )
}

/// Components of cyclic words of length <= `max_len` under all Type II
/// automorphisms and permutations, found by breadth-first search.
fn oracle_components(max_len: usize) -> HashMap<CyclicWord, usize> {
    let moves: Vec<Move> = WhiteheadII::all()
        .into_iter()
        .map(|phi| Box::new(move |w: &CyclicWord| phi.apply_cyclic(w)) as Move)
        .chain(
            Permutation::ALL
                .into_iter()
                .map(|pi| Box::new(move |w: &CyclicWord| pi.apply_cyclic(w)) as Move),
        )
        .collect();
    let canon = |w: &CyclicWord| w.rotations().min().unwrap_or_else(CyclicWord::empty);
    let mut component = HashMap::new();
    let mut next_id = 0;
    for w in cyclic_words(max_len) {
        let w = canon(&w);
        if component.contains_key(&w) {
            continue;
        }
        component.insert(w.clone(), next_id);
        let mut queue = VecDeque::from([w]);
        while let Some(u) = queue.pop_front() {
            for m in &moves {
                let v = canon(&m(&u));
                if v.len() <= max_len && !component.contains_key(&v) {
                    component.insert(v.clone(), next_id);
                    queue.push_back(v);
                }
            }
        }
        next_id += 1;
    }
    component
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let components = oracle_components(8);
    let words: Vec<Word> = all_reduced_words(6).into_iter().map(free_reduce).collect();
    let class_of = |w: &Word| {
        let c = cyclic_reduce(w).0;
        components[&c.rotations().min().unwrap_or_else(CyclicWord::empty)]
    };
    let classes: Vec<usize> = words.iter().map(class_of).collect();
    let mut pairs = 0usize;
    for (i, w) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            pairs += 1;
            let result = are_conjugate(w, v);
            let expected = classes[i] == classes[j];
            if result.conjugate != expected {
                failures.push(format!("are_conjugate({w}, {v}) = {}", result.conjugate));
            } else if let Some(steps) = &result.witness {
                if replay(&cyclic_reduce(w).0, steps) != cyclic_reduce(v).0 {
                    failures.push(format!("witness for ({w}, {v}) does not replay"));
                }
            }
            if failures.len() > 20 {
                return Err(failures);
            }
        }
    }
    let words12 = cyclic_words(12);
    for w in &words12 {
        if is_minimal(w) != is_minimal_definitional(w) {
            failures.push(format!("minimality criterion disagrees on {w}"));
        }
    }
    outcome(
        failures,
        format!(
            "{pairs} pairs agree with the oracle; minimality agrees on {} words",
            words12.len()
        ),
    )
}

fn class_mod_j(w: &CyclicWord) -> CyclicWord {
    canonical_mod_j(w).into_word()
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let short = cyclic_words(6);
    let short_words: Vec<Word> = all_reduced_words(6).into_iter().map(free_reduce).collect();
    let auts: Vec<OneLetterAut> = OneLetterAut::all().collect();

    for phi in &auts {
        for pi in Permutation::ALL {
            let conj = conjugate_by_perm(*phi, pi);
            for w in &short_words {
                if pi.apply(&phi.apply(w)) != conj.apply(&pi.apply(w)) {
                    failures.push(format!("permutation identity: {pi} {phi} on {w}"));
                }
            }
        }
        let partner = OneLetterAut::new(phi.y().inverse(), phi.x().inverse()).unwrap();
        for w in &short {
            let (u, v) = (phi.apply_cyclic(w), partner.apply_cyclic(w));
            if !u.rotations().any(|r| r == v) && !(u.is_empty() && v.is_empty()) {
                failures.push(format!("inner automorphism identity: {phi} vs {partner} on {w}"));
            }
        }
    }

    for phi in &auts {
        let (x, y) = (phi.x(), phi.y());
        let t = triangle_decompose(x, y).unwrap();
        for w in &short_words {
            if t.lhs(w) != t.rhs(w) {
                failures.push(format!("triangle identity ({x}, {y}) on {w}"));
            }
        }
        let p1 = *phi;
        let p2 = OneLetterAut::new(y, x.inverse()).unwrap();
        let p3 = OneLetterAut::new(x, y).unwrap();
        let p4 = OneLetterAut::new(x, y.inverse()).unwrap();
        for w in &short {
            let both = |f: OneLetterAut, g: OneLetterAut| class_mod_j(&f.apply_cyclic(&g.apply_cyclic(w)));
            let one = |f: OneLetterAut| class_mod_j(&f.apply_cyclic(w));
            for (lhs, rhs, label) in [
                (both(p2, p3), one(p1), "phi2 phi3 = phi1"),
                (both(p1, p4), one(p2), "phi1 phi4 = phi2"),
                (both(p4, p1), one(p3), "phi4 phi1 = phi3"),
                (both(p3, p2), one(p4), "phi3 phi2 = phi4"),
            ] {
                if lhs != rhs {
                    failures.push(format!("triangle corollary {label} for ({y}, {x}) on {w}"));
                }
            }
        }
    }

    let long = cyclic_words(10);
    let mut transported = 0usize;
    for phi in &auts {
        let (x, y) = (phi.x(), phi.y());
        let xb = x.inverse();
        for w in long.iter().filter(|w| w.len() >= 3) {
            let image = phi.apply_cyclic(w);
            let c = |u: &[Letter]| subword_count(w, u);
            let ci = |u: &[Letter]| subword_count(&image, u);
            let yy = ci(&[y, y]) == c(&[y, xb, y]);
            let xx = ci(&[x, x]) == c(&[y, x, y]) + c(&[y, x, x]) + c(&[x, x, y]) + c(&[x, x, x]);
            transported += 1;
            if !yy || !xx {
                failures.push(format!("count transport for {phi} on {w}"));
            }
            if failures.len() > 20 {
                return Err(failures);
            }
        }
    }
    outcome(
        failures,
        format!(
            "identities hold on words of length <= 6; count transport in {transported} cases on words of length 3..=10"
        ),
    )
}

fn criterion_8(by_length: &[Vec<EnumeratedClass>], rows: &[CensusRow]) -> Outcome {
    let mut failures = Vec::new();
    for r in rows {
        let mean = r.expected_size();
        let low = num_rational::Ratio::from_integer(1);
        let high = num_rational::Ratio::new(176, 100);
        if mean < low || mean >= high {
            failures.push(format!("n = {}: expected size {mean}", r.length));
        }
        let weight0 = r.count_where(|_, _, w| w == 0);
        let weight1 = r.count_where(|_, _, w| w == 1);
        let aaaa_size_one = by_length[r.length]
            .iter()
            .any(|c| c.record.weight == 0 && c.record.size == 1);
        if weight0 != 1 || !aaaa_size_one {
            failures.push(format!("n = {}: {weight0} weight-0 classes", r.length));
        }
        if weight1 != 0 {
            failures.push(format!("n = {}: {weight1} weight-1 classes", r.length));
        }
    }
    let tables = f2orbit_core::CensusTables { rows: rows.to_vec() };
    let expected = [0, 0, 0, 0, 0, 5, 12, 17, 24];
    let observed: Vec<usize> = (0..expected.len())
        .map(|k| diagonal(&tables, k, &[GraphType::P1]).last().map_or(0, |&(_, c)| c))
        .collect();
    if observed != expected {
        failures.push(format!("P1 classes of size 14 - k: {observed:?}"));
    }
    outcome(
        failures,
        format!("expected size in [1, 1.76) for n <= {MAX_CENSUS}; diagonal at n = 14 is {observed:?}"),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let fx = load_fixtures();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let by_length: Vec<Vec<EnumeratedClass>> = (0..=MAX_CENSUS)
        .map(|n| enumerate_classes_detailed(n, workers).unwrap_or_else(|e| panic!("n = {n}: {e}")))
        .collect();
    let rows: Vec<CensusRow> = by_length
        .iter()
        .enumerate()
        .map(|(n, classes)| {
            let records: Vec<_> = classes.iter().map(|c| c.record.clone()).collect();
            CensusRow::from_records(n, &records)
        })
        .collect();
    println!("census for n <= {MAX_CENSUS} took {:.1?}", started.elapsed());

    let criteria: Vec<Criterion> = vec![
        ("1 table of classes n <= 9", Box::new(|| criterion_1(&fx, &by_length))),
        ("2 type counts n <= 14", Box::new(|| criterion_2(&fx, &rows))),
        ("3 path size tables n <= 14", Box::new(|| criterion_3(&fx, &rows))),
        ("4 class size bound", Box::new(|| criterion_4(&by_length))),
        ("5 structure theorems n <= 12", Box::new(|| criterion_5(&by_length))),
        ("6 oracle equivalence", Box::new(criterion_6)),
        ("7 identity suite", Box::new(criterion_7)),
        ("8 enumeration statistics", Box::new(|| criterion_8(&by_length, &rows))),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(summary) => println!("PASS criterion {name}: {summary} [{:.1?}]", t.elapsed()),
            Err(failures) => {
                failed += 1;
                println!(
                    "FAIL criterion {name}: {} problem(s) [{:.1?}]",
                    failures.len(),
                    t.elapsed()
                );
                for f in failures.iter().take(10) {
                    println!("    {f}");
                }
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
