mod common;

use common::words;
use lattice_forge::deduction::*;
use lattice_forge::word::{normal_form_w, Identity, Word};
use proptest::prelude::*;

fn w_bounds() -> Bounds {
    Bounds {
        max_len: 8,
        max_steps: 10_000,
    }
}

#[test]
fn square_is_an_isoterm() {
    let sys = RewriteSystem::w_axioms();
    let s = search(&Term::parse("x^2").unwrap(), &Term::zero(), &sys, w_bounds());
    assert_eq!(s.verdict, Verdict::No);
    assert_eq!(one_step(&Term::parse("x^2").unwrap(), &sys, 8).len(), 0);
}

#[test]
fn derivability_matches_normal_forms_on_two_letters() {
    let sys = RewriteSystem::w_axioms();
    let ws = words(2, 5);
    for (k, u) in ws.iter().enumerate() {
        for v in &ws[k..] {
            let verdict = derivable(&u.into(), &v.into(), &sys, w_bounds());
            let same = normal_form_w(u) == normal_form_w(v);
            match verdict {
                Verdict::Yes(proof) => {
                    assert!(same, "{u} ~ {v}");
                    proof.validate(&sys).unwrap();
                }
                Verdict::No => assert!(!same, "{u} !~ {v}"),
                Verdict::Unknown => panic!("{u} ? {v}"),
            }
        }
    }
}

#[test]
fn proofs_serialize_one_step_per_line() {
    let sys = RewriteSystem::w_axioms();
    let (u, v) = (Term::parse("x*y*x").unwrap(), Term::parse("y*z^2").unwrap());
    let Verdict::Yes(proof) = derivable(&u, &v, &sys, Bounds::for_pair(&u, &v)) else {
        panic!("both sides are zero in W");
    };
    let text = proof.to_json_lines();
    assert_eq!(text.lines().count(), proof.steps.len());
    for (line, step) in text.lines().zip(&proof.steps) {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(value["before"], step.before.to_string());
        assert!(check_step(step, &sys));
    }
}

#[test]
fn tampered_steps_are_rejected() {
    let sys = RewriteSystem::w_axioms();
    let (u, v) = (Term::parse("x*y").unwrap(), Term::parse("y*x").unwrap());
    let Verdict::Yes(mut proof) = derivable(&u, &v, &sys, Bounds::for_pair(&u, &v)) else {
        panic!("commutativity");
    };
    proof.validate(&sys).unwrap();
    proof.steps[0].after = Term::parse("x*x").unwrap();
    assert!(!check_step(&proof.steps[0], &sys));
    assert!(proof.validate(&sys).is_err());
}

#[test]
fn case2_grid_replays() {
    for n in 2..=3 {
        for (l, r) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            for i in 1..=n {
                for j in i..=n {
                    for ip in i..=n {
                        for jp in ip..=n {
                            let report = replay_case2(n, i, j, l, ip, jp, r).unwrap();
                            assert!(report.passed(), "{n} {i} {j} {l} {ip} {jp} {r}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn case1_grid_replays() {
    for m in 3..=6 {
        for k in 3..=6 {
            if m != k {
                assert!(replay_case1(m, k).unwrap().passed(), "{m} {k}");
            }
        }
    }
    assert!(replay_case1(3, 3).is_err());
}

#[test]
fn replay_rejects_bad_tuples() {
    assert!(replay_case2(3, 2, 3, 2, 1, 1, 2).is_err());
    assert!(replay_case2(3, 1, 4, 2, 1, 1, 2).is_err());
    assert!(replay_case2(3, 1, 1, 1, 2, 3, 2).is_err());
}

#[test]
fn transforms_preserve_w_validity() {
    let id = Identity::lit("x1*x2 = x2*x1");
    let sub = substitute_in_identity(&id, &lattice_forge::word::Var::indexed(2), &Word::lit("x2*x3")).unwrap();
    let sys = RewriteSystem::w_axioms();
    let (u, v) = (Term::from(sub.lhs()), Term::from(sub.rhs().unwrap()));
    assert!(derivable(&u, &v, &sys, Bounds::for_pair(&u, &v)).is_yes());
}

proptest! {
    #[test]
    fn one_step_is_sound_for_w(code in 0usize..363) {
        let ws = words(3, 5);
        let w = &ws[code % ws.len()];
        let nf = normal_form_w(w);
        for next in one_step(&w.into(), &RewriteSystem::w_axioms(), 8) {
            match next.as_word() {
                Some(n) => prop_assert_eq!(normal_form_w(&n), nf.clone()),
                None => prop_assert!(nf.is_zero()),
            }
        }
    }
}
