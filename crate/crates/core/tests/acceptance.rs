//! Acceptance suite: one PASS/FAIL line per criterion, written straight to
//! stderr so the lines show up without `--nocapture`.

mod common;

use std::collections::HashMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use lattice_forge::catalog;
use lattice_forge::classify::{classify_all, classify_all_named, is_neutral_eq, is_neutral_gen};
use lattice_forge::deduction::{replay_case1, replay_case2, search, Bounds, RewriteSystem, Term, Verdict};
use lattice_forge::lattice::{enumerate_small, random_lattice, FiniteLattice};
use lattice_forge::lemmas::check_all;
use lattice_forge::semigroup::{catalog as sgp_catalog, FiniteSemigroup};
use lattice_forge::variety::{in_variety, value_vector, Membership, DEFAULT_CAP};
use lattice_forge::word::{normal_form_w, parse_identities, Identity, Word};

type Outcome = Result<String, String>;

fn corpus() -> Vec<(String, FiniteLattice)> {
    let mut out: Vec<(String, FiniteLattice)> = enumerate_small(8)
        .unwrap()
        .lattices
        .into_iter()
        .enumerate()
        .map(|(k, l)| (format!("small#{k}"), l))
        .collect();
    for seed in 1..=500u64 {
        let size = 9 + (seed as usize - 1) % 16;
        out.push((format!("random(size={size},seed={seed})"), random_lattice(size, seed).unwrap()));
    }
    out.extend(catalog::lattices().into_iter().map(|(n, l)| (n.to_string(), l)));
    out
}

fn lemma_suite(corpus: &[(String, FiniteLattice)]) -> Outcome {
    let mut instances = 0;
    let mut failures = Vec::new();
    for (id, l) in corpus {
        for report in check_all(l, id) {
            instances += report.instances_tested;
            if !report.passed() {
                failures.push(format!("{} on {id}: {:?} in {}", report.lemma, report.violations[0], l.to_json_string()));
            }
        }
    }
    let sizes: Vec<usize> = corpus.iter().map(|(_, l)| l.len()).collect();
    if failures.is_empty() {
        Ok(format!(
            "{} lattices (sizes {}..={}), {instances} instances, 0 violations",
            corpus.len(),
            sizes.iter().min().unwrap(),
            sizes.iter().max().unwrap()
        ))
    } else {
        Err(format!("{} violations; first: {}", failures.len(), failures[0]))
    }
}

fn neutral_oracles(corpus: &[(String, FiniteLattice)]) -> Outcome {
    let mut elements = 0;
    for (id, l) in corpus {
        for x in 0..l.len() {
            elements += 1;
            let eq = is_neutral_eq(l, x).is_ok();
            if eq != is_neutral_gen(l, x) {
                return Err(format!("{id} element {}: median says {eq}", l.name(x)));
            }
        }
    }
    Ok(format!("{elements} elements over {} lattices agree", corpus.len()))
}

fn goldens() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let render = |name: &str| {
        serde_json::to_string_pretty(&classify_all_named(&catalog::lattice(name).unwrap())).unwrap() + "\n"
    };
    for name in ["M3", "N5"] {
        let stored = std::fs::read_to_string(dir.join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        if render(name) != stored || render(name) != render(name) {
            return Err(format!("{name} report differs from its golden file"));
        }
    }
    let m3 = catalog::lattice("M3").unwrap();
    let reports = classify_all(&m3);
    let names = |f: fn(&lattice_forge::classify::ElementReport) -> bool| -> Vec<&str> {
        reports.iter().filter(|r| f(r)).map(|r| m3.name(r.element)).collect()
    };
    if names(|r| r.neutral) != ["0", "1"] || names(|r| r.cancellable) != ["0", "1"] || names(|r| r.modular).len() != 5 {
        return Err("M3 classification differs".into());
    }
    let n5 = catalog::lattice("N5").unwrap();
    let reports = classify_all(&n5);
    let hierarchy = reports
        .iter()
        .all(|r| (!r.neutral || r.cancellable) && (!r.cancellable || r.modular));
    let non_modular = reports.iter().filter(|r| !r.modular).count();
    if !hierarchy || non_modular == 0 {
        return Err(format!("N5: hierarchy {hierarchy}, non-modular {non_modular}"));
    }
    Ok(format!("M3 neutral/cancellable = {{0,1}}, modular = all; N5 has {non_modular} non-modular element; goldens byte-stable"))
}

fn deduction_agreement() -> Outcome {
    let sys = RewriteSystem::w_axioms();
    let bounds = Bounds {
        max_len: 8,
        max_steps: 10_000,
    };
    let ws = words(3, 6);
    let terms: Vec<Term> = ws.iter().map(Term::from).collect();
    let forms: Vec<_> = ws.iter().map(normal_form_w).collect();
    let (mut yes, mut no, mut pairs) = (0usize, 0usize, 0usize);
    for a in 0..ws.len() {
        for b in 0..ws.len() {
            pairs += 1;
            let same = forms[a] == forms[b];
            let s = search(&terms[a], &terms[b], &sys, bounds);
            match (&s.verdict, same) {
                (Verdict::Yes(p), true) => {
                    if p.validate(&sys).is_err() {
                        return Err(format!("invalid proof {} -> {}", ws[a], ws[b]));
                    }
                    yes += 1;
                }
                (Verdict::No, false) => no += 1,
                (v, _) => return Err(format!("{} vs {}: verdict {}, normal forms equal {same}", ws[a], ws[b], v.label())),
            }
        }
    }
    let iso = search(&Term::from(&Word::lit("x^2")), &Term::zero(), &sys, bounds);
    if iso.verdict != Verdict::No {
        return Err(format!("x^2 ~ 0 verdict {}", iso.verdict.label()));
    }
    Ok(format!(
        "{pairs} ordered pairs over {} words: {yes} derivable, {no} exhausted apart; x^2 ~ 0 exhausted after {} terms",
        ws.len(),
        iso.visited
    ))
}

fn case2_grid() -> Outcome {
    let mut count = 0;
    for n in 2..=3 {
        for l in 2..=3 {
            for r in 2..=3 {
                for i in 1..=n {
                    for j in i..=n {
                        for ip in i..=n {
                            for jp in ip..=n {
                                let report = replay_case2(n, i, j, l, ip, jp, r).map_err(|e| e.to_string())?;
                                if !report.passed() {
                                    return Err(format!("(n,i,j,l,i',j',r) = ({n},{i},{j},{l},{ip},{jp},{r})"));
                                }
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{count} tuples derived with all checks holding"))
}

fn case1_grid() -> Outcome {
    let mut count = 0;
    for m in 3..=6 {
        for k in 3..=6 {
            if m != k {
                let report = replay_case1(m, k).map_err(|e| e.to_string())?;
                if !report.passed() {
                    return Err(format!("(m,k) = ({m},{k})"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} exponent pairs derived"))
}

/// Word classes modulo the identities of each catalog member, per variable count.
struct Classes {
    words: Vec<Vec<Vec<usize>>>,
    /// `ids[s][n][w]`: class of word `w` over `n` variables in semigroup `s`.
    ids: Vec<Vec<Vec<usize>>>,
}

impl Classes {
    fn new(sgps: &[FiniteSemigroup], max_vars: usize, max_len: usize) -> Self {
        let words: Vec<Vec<Vec<usize>>> = (0..=max_vars)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                words(n, max_len)
                    .iter()
                    .map(|w| w.letters().iter().map(|v| v.name()[1..].parse::<usize>().unwrap() - 1).collect())
                    .collect()
            })
            .collect();
        let ids = sgps
            .iter()
            .map(|s| {
                (0..=max_vars)
                    .map(|n| {
                        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
                        words[n]
                            .iter()
                            .map(|w| {
                                let next = seen.len();
                                *seen.entry(value_vector(s, w, n)).or_insert(next)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Classes { words, ids }
    }

    /// Two words equal in every member of `ys` but different in `a`.
    fn separator(&self, a: usize, n: usize, ys: &[usize]) -> Option<(usize, usize)> {
        let mut first: HashMap<Vec<usize>, usize> = HashMap::new();
        for w in 0..self.words[n].len() {
            let key: Vec<usize> = ys.iter().map(|&y| self.ids[y][n][w]).collect();
            let rep = *first.entry(key).or_insert(w);
            if self.ids[a][n][rep] != self.ids[a][n][w] {
                return Some((rep, w));
            }
        }
        None
    }
}

fn membership_cross_check() -> Outcome {
    let sgps = sgp_catalog::all();
    let k = sgps.len();
    let classes = Classes::new(&sgps, 4, 5);
    let (mut yes, mut no) = (0, 0);
    for a in 0..k {
        let n = sgps[a].order();
        for mask in 0..1usize << k {
            let ys: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
            let bs: Vec<FiniteSemigroup> = ys.iter().map(|&y| sgps[y].clone()).collect();
            let verdict = in_variety(&sgps[a], &bs, DEFAULT_CAP).map_err(|e| e.to_string())?;
            let separator = classes.separator(a, n, &ys);
            let names = bs.iter().map(FiniteSemigroup::label).collect::<Vec<_>>().join(",");
            match (&verdict, separator) {
                (Membership::Yes, None) => yes += 1,
                (Membership::No(id), Some(_)) => {
                    if !bs.iter().all(|b| b.satisfies(id).holds) || sgps[a].satisfies(id).holds {
                        return Err(format!("witness {id} for {} vs {{{names}}} does not separate", sgps[a].label()));
                    }
                    no += 1;
                }
                (v, sep) => {
                    return Err(format!(
                        "{} vs {{{names}}}: oracle {}, bounded separator {:?}",
                        sgps[a].label(),
                        v.label(),
                        sep.map(|(u, w)| (classes.words[n][u].clone(), classes.words[n][w].clone()))
                    ))
                }
            }
        }
    }
    let get = sgp_catalog::get;
    let member = |a: &str, b: &str| in_variety(&get(a).unwrap(), &[get(b).unwrap()], DEFAULT_CAP).unwrap();
    let examples = matches!(member("ZM2", "SL2"), Membership::No(_))
        && matches!(member("SL2", "ZM2"), Membership::No(_))
        && member("ZM2", "ZM3") == Membership::Yes
        && sgp_catalog::names().iter().all(|s| member("T1", s) == Membership::Yes);
    if !examples {
        return Err("named membership examples differ".into());
    }
    Ok(format!("{} verdicts ({yes} yes, {no} no) agree with separation over words of length <= 5", yes + no))
}

fn degree_laws() -> Outcome {
    let mut bad = nil_product_violations();
    bad.extend(fin_deg_monotonicity_violations(4, 4));
    bad.extend(split_content_violations());
    bad.extend(split_wrap_violations());
    match bad.first() {
        None => Ok(format!("{} nil semigroups; products, degree witnesses and splitting sweeps clean", nil_catalog().len())),
        Some(first) => Err(format!("{} violations; first: {first}", bad.len())),
    }
}

fn round_trips() -> Outcome {
    let mut count = 0;
    for (name, l) in catalog::lattices() {
        let back = FiniteLattice::from_json_str(&l.to_json_string()).map_err(|e| e.to_string())?;
        if back != l || back.to_json_string() != l.to_json_string() {
            return Err(format!("lattice {name}"));
        }
        count += 1;
    }
    for seed in 1..=500u64 {
        let l = random_lattice(9 + (seed as usize - 1) % 16, seed).unwrap();
        if FiniteLattice::from_json_str(&l.to_json_string()).ok() != Some(l) {
            return Err(format!("random lattice seed {seed}"));
        }
        count += 1;
    }
    for s in sgp_catalog::all() {
        let back = FiniteSemigroup::from_json_str(&s.to_json_string()).map_err(|e| e.to_string())?;
        if back != s || back.to_json_string() != s.to_json_string() {
            return Err(format!("semigroup {}", s.label()));
        }
        count += 1;
    }
    for name in catalog::identity_file_names() {
        let ids = catalog::identities(name).unwrap();
        let text: String = ids.iter().map(|id| format!("{id}\n")).collect();
        if parse_identities(&text).ok().as_deref() != Some(&ids[..]) {
            return Err(format!("identity file {name}"));
        }
        let _: Vec<&Identity> = ids.iter().collect();
        count += ids.len();
    }
    Ok(format!("{count} structures round-trip exactly"))
}

fn report(number: usize, title: &str, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    let (status, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    let line = format!("[{number}] {status} {title} (tolerance: exact; {secs:.1}s): {detail}\n");
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    outcome.is_ok()
}

#[test]
fn acceptance() {
    std::io::stderr().write_all(b"\n").unwrap();
    let corpus = corpus();
    let results = [
        report(1, "lemma suite", || lemma_suite(&corpus)),
        report(2, "neutrality oracles agree", || neutral_oracles(&corpus)),
        report(3, "named-lattice goldens", goldens),
        report(4, "normal forms match derivability", deduction_agreement),
        report(5, "case-2 replay grid", case2_grid),
        report(6, "case-1 replay", case1_grid),
        report(7, "membership oracle cross-check", membership_cross_check),
        report(8, "degree laws", degree_laws),
        report(9, "format round-trips", round_trips),
    ];
    let failed: Vec<usize> = (1..=9).filter(|k| !results[k - 1]).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
