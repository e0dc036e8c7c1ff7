//! Acceptance suite: nine numbered criteria, each printed as a single
//! pass/fail line.

use std::io::Write;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;

use sdhall::complex::ComplexContext;
use sdhall::config::{parse_charge_list, parse_quiver_text, Mode, RunConfig};
use sdhall::driver;
use sdhall::quantum::{
    check_bracket_symmetry, check_straighten_c_cstar, check_straighten_cstar_c, check_sum_split,
    check_sum_split_reversed, perturbed, relation_image, relations_charged, relations_layered,
    PhiImages, PsiImages,
};
use sdhall::quiver::Quiver;
use sdhall::rep::{Budget, ClassId, RepContext};
use sdhall::scalar::QuadExt;
use sdhall::sdh::{NormalBasisElement, SDHElement, SdhContext};

/// Write one status line straight to the process's standard output.
///
/// The test harness captures the `print!` macro family per test, hiding
/// lines from passing tests; writing to file descriptor 1 directly keeps
/// the per-criterion verdicts visible in the plain `cargo test` output.
fn announce(line: &str) {
    use std::os::unix::io::FromRawFd;
    let mut out = unsafe { std::fs::File::from_raw_fd(1) };
    let _ = writeln!(out, "{line}");
    std::mem::forget(out);
}

fn criterion(n: usize, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => announce(&format!("[ACCEPT] criterion {n}: PASS")),
        Err(e) => {
            announce(&format!("[ACCEPT] criterion {n}: FAIL"));
            resume_unwind(e);
        }
    }
}

/// All dimension vectors over `n` vertices with total in `0..=bound`.
fn dim_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    fn fill(n: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for d in 0..=total {
            if prefix.len() + 1 == n && d != total {
                continue;
            }
            prefix.push(d);
            fill(n, total - d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=bound {
        fill(n, total, &mut Vec::new(), &mut out);
    }
    out
}

fn classes_up_to(reps: &Arc<RepContext>, bound: usize) -> Vec<ClassId> {
    let mut out = Vec::new();
    for dims in dim_vectors(reps.quiver().n(), bound) {
        for &(c, _) in reps.enumerate_reps(&dims).unwrap().iter() {
            out.push(c);
        }
    }
    out
}

fn nilpotent_sdh(quiver: Arc<Quiver>, q: u8) -> Arc<SdhContext> {
    SdhContext::new(RepContext::new(quiver, q, true, Budget::default()))
}

fn config_from(text: &str, qs: Vec<u8>, mode: Mode, charge: &str, lmax: usize) -> RunConfig {
    let parsed = parse_quiver_text(text).unwrap();
    let quiver = Arc::new(parsed.build().unwrap());
    let lambda_rows = parsed.lambda.clone();
    RunConfig {
        quiver_path: PathBuf::from("acceptance.quiver"),
        parsed,
        quiver,
        qs,
        lmax,
        mode,
        charge_entries: parse_charge_list(charge).unwrap(),
        lambda_rows,
        budget: 1 << 22,
        dim_bound: 3,
        out: None,
        serial: true,
    }
}

/// Criterion 1: the twelve Hom-minus-Ext pairing identities between stalk
/// and contractible classes, over all classes of dimension at most 2 on the
/// one-loop and two-loop quivers at q = 2.
#[test]
fn criterion_1_pairings_of_stalk_and_contractible_classes() {
    criterion(1, || {
        for loops in [1usize, 2] {
            let quiver = Arc::new(Quiver::loop_quiver(loops));
            let reps = RepContext::new(quiver.clone(), 2, true, Budget::default());
            let cxs = ComplexContext::new(reps.clone());
            let classes = classes_up_to(&reps, 2);
            assert!(classes.len() >= 4);
            let pairing = |x, y| cxs.hom_dim_classes(x, y) as i64 - cxs.ext1_dim_cx(x, y) as i64;
            for &a in &classes {
                for &b in &classes {
                    let ahat = reps.class_dim_vec(a);
                    let bhat = reps.class_dim_vec(b);
                    let ab = quiver.euler_form(&ahat, &bhat);
                    let ba = quiver.euler_form(&bhat, &ahat);
                    let ca = cxs.stalk_class(a).unwrap();
                    let csa = cxs.costalk_class(a).unwrap();
                    let ka = cxs.acyclic_class(a).unwrap();
                    let ksa = cxs.coacyclic_class(a).unwrap();
                    let kb = cxs.acyclic_class(b).unwrap();
                    let ksb = cxs.coacyclic_class(b).unwrap();

                    // a stalk against a contractible, nonvanishing side
                    assert_eq!(pairing(ca, kb), ab, "loops={loops}");
                    assert_eq!(pairing(csa, ksb), ab, "loops={loops}");
                    assert_eq!(pairing(kb, csa), ba, "loops={loops}");
                    assert_eq!(pairing(ksb, ca), ba, "loops={loops}");
                    // the four vanishing mixed pairings
                    assert_eq!(pairing(kb, ca), 0, "loops={loops}");
                    assert_eq!(pairing(csa, kb), 0, "loops={loops}");
                    assert_eq!(pairing(ca, ksb), 0, "loops={loops}");
                    assert_eq!(pairing(ksb, csa), 0, "loops={loops}");
                    // contractible against contractible
                    assert_eq!(pairing(ka, kb), ab, "loops={loops}");
                    assert_eq!(pairing(ksa, ksb), ab, "loops={loops}");
                    assert_eq!(pairing(ka, ksb), ab, "loops={loops}");
                    assert_eq!(pairing(ksa, kb), ab, "loops={loops}");
                }
            }
        }
    });
}

/// Criterion 2: the subobject-count route and the extension-cocycle route
/// agree on every filtration count with total dimension at most 3 on the
/// one-loop quiver at q in {2, 3}.
#[test]
fn criterion_2_two_counting_routes_agree() {
    criterion(2, || {
        let cfg = config_from(
            "vertices: 1\narrow: 1 1\n",
            vec![2, 3],
            Mode::Layered,
            "",
            2,
        );
        let report = driver::run_hallnum(&cfg).unwrap();
        assert!(report.all_zero(), "{}", report.render());
        // sanity: the table is not vacuous
        assert!(report.records.len() > 10);
    });
}

/// Criterion 3: both straightening identities for products of opposite
/// stalk powers, over 1 <= k, l <= 3 at q = 2 and 1 <= k, l <= 2 at q = 3,
/// on the one-loop and two-loop quivers.
#[test]
fn criterion_3_straightening_identities() {
    criterion(3, || {
        for (q, lim) in [(2u8, 3usize), (3, 2)] {
            for loops in [1usize, 2] {
                let ctx = nilpotent_sdh(Arc::new(Quiver::loop_quiver(loops)), q);
                for k in 1..=lim {
                    for l in 1..=lim {
                        assert!(
                            check_straighten_c_cstar(&ctx, 0, k, l).unwrap(),
                            "c-c* q={q} loops={loops} k={k} l={l}"
                        );
                        assert!(
                            check_straighten_cstar_c(&ctx, 0, k, l).unwrap(),
                            "c*-c q={q} loops={loops} k={k} l={l}"
                        );
                    }
                }
            }
        }
    });
}

/// Criterion 4: the bracket-symmetry identity and both sum-splits of the
/// combined pair class, over the same grid as criterion 3.
#[test]
fn criterion_4_bracket_symmetry_and_sum_splits() {
    criterion(4, || {
        for (q, lim) in [(2u8, 3usize), (3, 2)] {
            for loops in [1usize, 2] {
                let ctx = nilpotent_sdh(Arc::new(Quiver::loop_quiver(loops)), q);
                for k in 1..=lim {
                    for l in 1..=lim {
                        assert!(
                            check_bracket_symmetry(&ctx, 0, k, l).unwrap(),
                            "sym q={q} loops={loops} k={k} l={l}"
                        );
                        assert!(
                            check_sum_split(&ctx, 0, k, l).unwrap(),
                            "split q={q} loops={loops} k={k} l={l}"
                        );
                        assert!(
                            check_sum_split_reversed(&ctx, 0, k, l).unwrap(),
                            "rev-split q={q} loops={loops} k={k} l={l}"
                        );
                    }
                }
            }
        }
    });
}

/// Criterion 5: the full layered relation matrix maps to zero at q = 2 with
/// layer bound 2 on (a) the one-loop quiver, (b) the two-loop quiver, and
/// (c) a one-loop vertex with an arrow to a loop-free vertex; configuration
/// (c) exercises the higher Serre relations.
#[test]
fn criterion_5_layered_relation_matrix() {
    criterion(5, || {
        let quivers: Vec<Arc<Quiver>> = vec![
            Arc::new(Quiver::loop_quiver(1)),
            Arc::new(Quiver::loop_quiver(2)),
            Arc::new(Quiver::new(vec![0, 1], &[(0, 0), (0, 1)]).unwrap()),
        ];
        for (tag, quiver) in quivers.into_iter().enumerate() {
            let rels = relations_layered(&quiver, 2);
            if tag == 2 {
                assert!(rels.iter().any(|r| r.name.starts_with("e-serre")));
                assert!(rels.iter().any(|r| r.name.starts_with("f-serre")));
            }
            let ctx = nilpotent_sdh(quiver, 2);
            let images = PhiImages::new(ctx).unwrap();
            for rel in &rels {
                let img = relation_image(&images, rel).unwrap();
                assert!(img.is_zero(), "configuration {tag}: relation {}", rel.name);
            }
        }
    });
}

/// Criterion 6: the full charged relation matrix maps to zero on the
/// one-loop quiver with charge 2 and scalar rows (0), (1), at q = 3 and at
/// q = 2; the diagonal commutator case reproduces the exact two-term
/// product expansion with the `(q-1)`-weighted contractible class.
#[test]
fn criterion_6_charged_relation_matrix() {
    criterion(6, || {
        let quiver = Arc::new(Quiver::loop_quiver(1));
        let lambda: Vec<Vec<Vec<u8>>> = vec![vec![vec![0], vec![1]]];
        for q in [3u8, 2] {
            let reps = RepContext::new(quiver.clone(), q, false, Budget::default());
            let ctx = SdhContext::new(reps);
            let images = PsiImages::new(ctx.clone(), &lambda).unwrap();
            let rels = relations_charged(&quiver, &[2]).unwrap();
            assert!(rels.iter().any(|r| r.name.starts_with("EF-delta")));
            for rel in &rels {
                let img = relation_image(&images, rel).unwrap();
                assert!(img.is_zero(), "q={q}: relation {}", rel.name);
            }

            // the diagonal product expansion behind the commutator relation:
            // [C_S] [C*_S] = [C_S (+) C*_S] + (q-1) [K*] for both scalar rows
            for row in [[0u8], [1]] {
                let s = ctx.reps().simple_class(0, &row).unwrap();
                let lhs = ctx.mul(&ctx.stalk_elem(s), &ctx.costalk_elem(s)).unwrap();
                let expected = ctx.pair_elem(s, s).plus(
                    &ctx.kstar_elem(&[1])
                        .scaled(&QuadExt::from_int(q, (q - 1) as i64)),
                );
                assert_eq!(lhs, expected, "q={q} row={row:?}");
            }
        }
    });
}

/// Criterion 7: associativity over 200 deterministically chosen triples of
/// normal-form basis elements with component dimensions at most 2, q = 2.
#[test]
fn criterion_7_associativity_sample() {
    criterion(7, || {
        let ctx = nilpotent_sdh(Arc::new(Quiver::loop_quiver(1)), 2);
        let classes = classes_up_to(ctx.reps(), 2);
        let weights: [(i64, i64); 3] = [(0, 0), (1, 0), (0, 1)];
        let mut elems: Vec<SDHElement> = Vec::new();
        for &a in &classes {
            for &b in &classes {
                for &(wa, wb) in &weights {
                    elems.push(SDHElement::from_term(
                        ctx.q(),
                        NormalBasisElement {
                            a,
                            b,
                            alpha: vec![wa],
                            beta: vec![wb],
                        },
                        QuadExt::from_int(2, 1),
                    ));
                }
            }
        }
        let m = elems.len();
        assert!(m >= 24);
        let mut checked = 0usize;
        let mut i = 0usize;
        while checked < 200 {
            let x = &elems[(i * 7 + 1) % m];
            let y = &elems[(i * 11 + 3) % m];
            let z = &elems[(i * 13 + 5) % m];
            let left = ctx.mul(&ctx.mul(x, y).unwrap(), z).unwrap();
            let right = ctx.mul(x, &ctx.mul(y, z).unwrap()).unwrap();
            assert_eq!(left, right, "triple index {i}");
            checked += 1;
            i += 1;
        }
    });
}

/// Criterion 8: negative controls — perturbing one coefficient of a
/// genuinely-holding relation produces a nonzero residual in both
/// presentations.
#[test]
fn criterion_8_negative_controls() {
    criterion(8, || {
        // layered cascade relation at the loop vertex
        let quiver = Arc::new(Quiver::loop_quiver(1));
        let ctx = nilpotent_sdh(quiver.clone(), 2);
        let images = PhiImages::new(ctx).unwrap();
        let rels = relations_layered(&quiver, 2);
        let cascade = rels
            .iter()
            .find(|r| r.name.starts_with("ef-cascade"))
            .unwrap();
        assert!(relation_image(&images, cascade).unwrap().is_zero());
        let broken = relation_image(&images, &perturbed(cascade)).unwrap();
        assert!(!broken.is_zero(), "perturbed cascade must not vanish");

        // charged diagonal commutator relation
        let reps = RepContext::new(quiver.clone(), 3, false, Budget::default());
        let ctx = SdhContext::new(reps);
        let lambda: Vec<Vec<Vec<u8>>> = vec![vec![vec![0], vec![1]]];
        let images = PsiImages::new(ctx, &lambda).unwrap();
        let rels = relations_charged(&quiver, &[2]).unwrap();
        let delta = rels
            .iter()
            .find(|r| r.name.starts_with("EF-delta[0,1;0,1]"))
            .unwrap();
        assert!(relation_image(&images, delta).unwrap().is_zero());
        let broken = relation_image(&images, &perturbed(delta)).unwrap();
        assert!(!broken.is_zero(), "perturbed commutator must not vanish");
    });
}

/// Criterion 9: the reduction of 50 enumerated complexes (component
/// dimensions at most 2) is a single normal-form term; the canonical
/// complex assembled from that normal form reduces to the same term
/// (idempotence), and multiplying the normal form's three factors
/// reproduces the basis element with unit coefficient (triangularity).
#[test]
fn criterion_9_normal_form_idempotence() {
    criterion(9, || {
        let mut seen = 0usize;
        'outer: for g in [1usize, 2] {
            let quiver = Arc::new(Quiver::loop_quiver(g));
            let reps = RepContext::new(quiver, 2, true, Budget::default());
            let cxs = ComplexContext::new(reps.clone());
            let ctx = SdhContext::new(reps.clone());
            for d0 in 0..=2usize {
                for d1 in 0..=2usize {
                    for cid in cxs.enumerate_complexes(&[d0], &[d1]).unwrap() {
                        let x = cxs.class_rep_cx(cid);
                        let (nbe, coef) = ctx.reduce(&x).unwrap();
                        assert!(!coef.is_zero());
                        assert!(nbe.alpha.iter().all(|&r| r >= 0));
                        assert!(nbe.beta.iter().all(|&r| r >= 0));

                        // idempotence: the canonical complex of the normal form
                        // reduces to the same basis key
                        let a_rep = reps.class_rep(nbe.a);
                        let b_rep = reps.class_rep(nbe.b);
                        let alpha_dims: Vec<usize> =
                            nbe.alpha.iter().map(|&r| r as usize).collect();
                        let beta_dims: Vec<usize> = nbe.beta.iter().map(|&r| r as usize).collect();
                        let alpha_rep = sdhall::rep::Representation::zero_of(
                            reps.quiver().clone(),
                            2,
                            alpha_dims,
                        );
                        let beta_rep = sdhall::rep::Representation::zero_of(
                            reps.quiver().clone(),
                            2,
                            beta_dims,
                        );
                        let canonical = sdhall::complex::Z2Complex::stalk((*a_rep).clone())
                            .direct_sum(&sdhall::complex::Z2Complex::costalk((*b_rep).clone()))
                            .direct_sum(&sdhall::complex::Z2Complex::acyclic(alpha_rep))
                            .direct_sum(&sdhall::complex::Z2Complex::coacyclic(beta_rep));
                        let (nbe2, coef2) = ctx.reduce(&canonical).unwrap();
                        assert_eq!(nbe2, nbe);
                        assert!(!coef2.is_zero());

                        // triangularity: the product of the three factors is the
                        // basis element itself, with coefficient one
                        let product = ctx
                            .mul_all(&[
                                ctx.pair_elem(nbe.a, nbe.b),
                                ctx.k_elem(&nbe.alpha),
                                ctx.kstar_elem(&nbe.beta),
                            ])
                            .unwrap();
                        let unit = SDHElement::from_term(2, nbe.clone(), QuadExt::from_int(2, 1));
                        assert_eq!(product, unit);

                        seen += 1;
                        if seen == 50 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert_eq!(seen, 50, "expected at least 50 enumerated complexes");
    });
}
