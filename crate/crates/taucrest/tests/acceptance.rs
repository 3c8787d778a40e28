//! End-to-end acceptance checks, one test per criterion. Each prints a
//! single pass line when its assertions hold.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;
use taucrest::algebra::{build_algebra, product_rep, AlgebraPresentation, Quiver};
use taucrest::classify::{
    enumerate_indecomposables, enumerate_pair_support_tau_tilting, sum_of, verify_theorems,
    EnumConfig, VerdictStatus, VerifyInput,
};
use taucrest::exactmat::{FieldTag, Mat, Scalar};
use taucrest::fitting::is_isomorphic;
use taucrest::input::resolve_input;
use taucrest::repcat::{
    direct_sum, minimal_presentation, projective_module, projective_rep, simple_module, Rep,
    RepMap,
};
use taucrest::taukit::{count_indec_summands, is_tau_rigid, is_tau_rigid_via_tau};
use taucrest::trivext::{
    functor_c, functor_t, functor_u, functor_z, pair_complexes_isomorphic, pair_count_summands,
    pair_is_isomorphic, pair_is_minimal_epi, pair_is_stt_module, pair_minimal_presentation,
    pair_projective_cover, regular_pair, t_of_map, z_closed_form, PairMap, TrivialExtension,
};

fn examples_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../examples")
}

fn cfg(max: usize) -> EnumConfig {
    EnumConfig {
        field: FieldTag::Prime(2),
        max_total_dim: max,
        seed: 0,
        parallel: false,
    }
}

fn verified(report: &taucrest::classify::VerificationReport, name: &str) -> bool {
    report
        .verdicts
        .iter()
        .any(|v| v.name == name && matches!(v.status, VerdictStatus::Verified { .. }))
}

/// A random module with per-vertex dimension at most `max`, rejection
/// sampled against the relations.
fn random_module(
    algebra: &Arc<taucrest::algebra::Algebra>,
    max: usize,
    rng: &mut ChaCha8Rng,
) -> Arc<Rep> {
    let field = algebra.field;
    loop {
        let dims: Vec<usize> = (0..algebra.vertex_count)
            .map(|_| rng.gen_range(0..=max))
            .collect();
        if dims.iter().all(|&d| d == 0) {
            continue;
        }
        let mats: Vec<Mat> = algebra
            .quiver
            .arrows
            .iter()
            .map(|a| {
                let mut m = Mat::zeros(field, dims[a.target], dims[a.source]);
                for r in 0..dims[a.target] {
                    for c in 0..dims[a.source] {
                        let e = match field {
                            FieldTag::Prime(p) => rng.gen_range(0..p as i64),
                            FieldTag::Rationals => rng.gen_range(-3..=3),
                        };
                        m.set(r, c, Scalar::from_i64(field, e));
                    }
                }
                m
            })
            .collect();
        let rep = Rep {
            algebra: algebra.clone(),
            dims,
            mats,
        };
        if rep.satisfies_relations() {
            return Arc::new(rep);
        }
    }
}

fn two_cycle_nakayama(field: FieldTag) -> Arc<taucrest::algebra::Algebra> {
    build_algebra(&AlgebraPresentation {
        quiver: Quiver::new(2, vec![(0, 1, "a"), (1, 0, "b")]),
        relations: vec![],
        nilpotency_bound: 3,
        field,
    })
    .unwrap()
}

#[test]
fn criterion_1_first_example_reproduction() {
    let start = Instant::now();
    let resolved = resolve_input(&examples_dir().join("ex41.alg"), None).unwrap();
    let input = VerifyInput {
        ext: resolved.ext.clone(),
        product: None,
    };
    let report = verify_theorems(&input, &cfg(4)).unwrap();
    assert!(report.all_verified(), "{}", report.render_text());

    // Three tau-rigid indecomposables over the base algebra.
    assert_eq!(report.a_tau_rigid.len(), 3);
    for name in ["P(1)", "P(2)", "S(1)"] {
        assert!(report.a_tau_rigid.iter().any(|l| l == name), "missing {}", name);
    }
    // Four over the extension, with the expected dimension vectors.
    assert_eq!(report.lambda_tau_rigid.len(), 4);
    let mut dims: Vec<Vec<usize>> = report
        .lambda_tau_rigid
        .iter()
        .map(|(_, d)| d.clone())
        .collect();
    dims.sort();
    assert_eq!(dims, vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]]);
    // Five support tau-tilting pairs on each side plus the zero pair over
    // the extension, and exactly one support tau-tilting module over the
    // extension that is neither a T nor a Z image.
    assert_eq!(report.a_stt.len(), 5);
    assert_eq!(report.lambda_stt.len(), 6);
    let neither: Vec<_> = report
        .lambda_stt
        .iter()
        .filter(|(_, form)| form == "neither")
        .collect();
    assert_eq!(neither.len(), 1);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {:?}", elapsed);
    println!("criterion 1 (first example reproduction, {:?}): pass", elapsed);
}

#[test]
fn criterion_2_second_example_status_lines() {
    let start = Instant::now();
    let resolved = resolve_input(&examples_dir().join("ex42.alg"), None).unwrap();
    let ext = &resolved.ext;
    let prod = resolved.product.clone().unwrap();
    let input = VerifyInput {
        ext: ext.clone(),
        product: Some(prod.clone()),
    };
    let report = verify_theorems(&input, &cfg(4)).unwrap();
    assert!(report.all_verified(), "{}", report.render_text());

    // The four support tau-tilting modules over one copy of the factor
    // algebra: the whole algebra, projective + simple, the simple at the
    // source, and the simple at the sink.
    let factor_modules = |a: &Arc<taucrest::algebra::Algebra>| -> Vec<Arc<Rep>> {
        let p1 = projective_module(a, 0);
        let p2 = projective_module(a, 1);
        let s1 = simple_module(a, 0);
        vec![
            direct_sum(&[p1.clone(), p2.clone()]).0,
            direct_sum(&[p1, s1.clone()]).0,
            s1,
            projective_module(a, 1),
        ]
    };
    let r_mods = factor_modules(&prod.r);
    let s_mods = factor_modules(&prod.s);
    let zero_r = Arc::new(Rep::zero(prod.r.clone()));
    let zero_s = Arc::new(Rep::zero(prod.s.clone()));
    let pick = |i: usize, side: &[Arc<Rep>], zero: &Arc<Rep>| {
        if i == 0 {
            zero.clone()
        } else {
            side[i - 1].clone()
        }
    };
    // (x index, y index, T-form expected, Z-form expected); index 0 is the
    // zero module, 1..=4 the four support tau-tilting modules above.
    let t_status = |x: usize, y: usize| {
        let m = product_rep(&prod, &pick(x, &r_mods, &zero_r), &pick(y, &s_mods, &zero_s));
        pair_is_stt_module(&functor_t(ext, &m), 0)
    };
    let z_status = |x: usize, y: usize| {
        let m = product_rep(&prod, &pick(x, &r_mods, &zero_r), &pick(y, &s_mods, &zero_s));
        pair_is_stt_module(&functor_z(ext, &m), 0)
    };
    for i in 1..=4 {
        assert!(!t_status(i, 0), "T of ({}, 0) must not be support tau-tilting", i);
        assert!(t_status(i, i), "T of ({0}, {0}) must be support tau-tilting", i);
        assert!(z_status(i, 0), "Z of ({}, 0) must be support tau-tilting", i);
        assert!(z_status(0, i), "Z of (0, {}) must be support tau-tilting", i);
        assert!(t_status(0, i), "T of (0, {}) must be support tau-tilting", i);
    }
    for i in 2..=4 {
        assert!(t_status(i, 1), "T of ({}, 1) must be support tau-tilting", i);
    }
    assert!(t_status(3, 2));
    assert!(!t_status(2, 3));
    for i in 1..=3 {
        assert!(!t_status(i, 4), "T of ({}, 4) must not be support tau-tilting", i);
    }
    assert!(z_status(4, 3));
    for i in 2..=3 {
        assert!(z_status(i, 4), "Z of ({}, 4) must be support tau-tilting", i);
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {:?}", elapsed);
    println!("criterion 2 (second example status lines, {:?}): pass", elapsed);
}

#[test]
fn criterion_3_transfer_biconditionals() {
    // Both example configurations plus two further ones: the two-vertex
    // path algebra with its regular bimodule, and the two-cycle Nakayama
    // algebra with its dual bimodule.
    let ex1 = resolve_input(&examples_dir().join("ex41.alg"), None).unwrap();
    let ex2 = resolve_input(&examples_dir().join("ex42.alg"), None).unwrap();
    let mut configs = vec![
        (
            VerifyInput {
                ext: ex1.ext.clone(),
                product: None,
            },
            4,
        ),
        (
            VerifyInput {
                ext: ex2.ext.clone(),
                product: ex2.product.clone(),
            },
            4,
        ),
    ];
    let a2 = build_algebra(&AlgebraPresentation {
        quiver: Quiver::new(2, vec![(0, 1, "a")]),
        relations: vec![],
        nilpotency_bound: 2,
        field: FieldTag::Prime(2),
    })
    .unwrap();
    let m = taucrest::algebra::regular_bimodule(&a2);
    configs.push((
        VerifyInput {
            ext: TrivialExtension::new(a2, m),
            product: None,
        },
        3,
    ));
    let nak = two_cycle_nakayama(FieldTag::Prime(2));
    let m = taucrest::algebra::dual_bimodule(&nak);
    configs.push((
        VerifyInput {
            ext: TrivialExtension::new(nak, m),
            product: None,
        },
        3,
    ));
    for (input, bound) in &configs {
        let report = verify_theorems(input, &cfg(*bound)).unwrap();
        assert!(verified(&report, "Theorem 3.7(1)"), "{}", report.render_text());
        assert!(verified(&report, "Theorem 3.7(2)"), "{}", report.render_text());
    }
    println!("criterion 3 (transfer biconditionals on 4 configurations): pass");
}

#[test]
fn criterion_4_necessity_over_all_rigid_pairs() {
    for file in ["ex41.alg", "ex42.alg"] {
        let resolved = resolve_input(&examples_dir().join(file), None).unwrap();
        let out = enumerate_pair_support_tau_tilting(&resolved.ext, &cfg(4)).unwrap();
        assert!(!out.tau_rigid.is_empty());
        for &i in &out.tau_rigid {
            let pair = &out.indecs[i];
            assert!(is_tau_rigid(&pair.rep), "underlying module must be tau-rigid");
            assert!(
                is_tau_rigid(&functor_c(pair).rep),
                "structure-map cokernel must be tau-rigid"
            );
        }
    }
    println!("criterion 4 (necessity over all enumerated tau-rigid pairs): pass");
}

#[test]
fn criterion_5_translate_criterion_matches_oracle() {
    let a2 = build_algebra(&AlgebraPresentation {
        quiver: Quiver::new(2, vec![(0, 1, "a")]),
        relations: vec![],
        nilpotency_bound: 2,
        field: FieldTag::Prime(2),
    })
    .unwrap();
    let nak = two_cycle_nakayama(FieldTag::Prime(2));
    for algebra in [a2, nak] {
        let out = enumerate_indecomposables(&algebra, &cfg(5)).unwrap();
        assert!(out.warnings.is_empty());
        for x in &out.classes {
            assert_eq!(
                is_tau_rigid(x),
                is_tau_rigid_via_tau(x),
                "presentation criterion and translate oracle disagree on dims {:?}",
                x.dims
            );
        }
    }
    println!("criterion 5 (rigidity criterion matches the translate oracle, total dim <= 5): pass");
}

#[test]
fn criterion_6_functor_identities_and_minimal_epi() {
    let resolved = resolve_input(&examples_dir().join("ex41.alg"), None).unwrap();
    let ext = &resolved.ext;
    let algebra = &resolved.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let x = random_module(algebra, 3, &mut rng);
        let t = functor_t(ext, &x);
        let z = functor_z(ext, &x);
        // C . T and U . Z are the identity.
        assert!(is_isomorphic(&functor_c(&t).rep, &x, 0));
        assert_eq!(*functor_u(&z), *x);
        // The per-vertex projection (1, 0): T(X) -> Z(X) is a minimal
        // epimorphism of pairs.
        let field = algebra.field;
        let blocks: Vec<Mat> = (0..algebra.vertex_count)
            .map(|v| {
                Mat::identity(field, x.dims[v]).hstack(&Mat::zeros(
                    field,
                    x.dims[v],
                    t.rep.dims[v] - x.dims[v],
                ))
            })
            .collect();
        let proj = PairMap::new(
            t.clone(),
            z.clone(),
            RepMap::new(t.rep.clone(), z.rep.clone(), blocks),
        );
        assert!(pair_is_minimal_epi(&proj));
        // T(X) and Z(X) have projective covers from the same projective.
        let mut tv = pair_projective_cover(&t).2;
        let mut zv = pair_projective_cover(&z).2;
        tv.sort_unstable();
        zv.sort_unstable();
        assert_eq!(tv, zv);
    }
    println!("criterion 6 (functor identities and minimal epimorphisms, 100 random modules): pass");
}

#[test]
fn criterion_7_presentation_closed_forms() {
    let resolved = resolve_input(&examples_dir().join("ex41.alg"), None).unwrap();
    let ext = &resolved.ext;
    let algebra = &resolved.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for round in 0..50 {
        let x = random_module(algebra, 3, &mut rng);
        // T takes a minimal presentation of X to a minimal presentation of
        // T(X), up to isomorphism of complexes.
        let a_pres = minimal_presentation(&x);
        let t_pres = pair_minimal_presentation(&functor_t(ext, &x));
        assert!(
            pair_complexes_isomorphic(&t_pres.f, &t_of_map(ext, &a_pres.f), round),
            "T of the presentation differs for dims {:?}",
            x.dims
        );
        // The minimal presentation of Z(X) has the block closed form
        // [[f, 0, 0, 0], [0, r, F(f), 0]].
        let zcf = z_closed_form(ext, &x);
        let f = zcf.f.total_mat();
        let r = zcf.r.total_mat();
        let ff = zcf.ff.total_mat();
        let field = algebra.field;
        let fq_cols = zcf.normal.cols() - f.cols() - r.cols() - ff.cols();
        let top = f
            .hstack(&Mat::zeros(field, f.rows(), r.cols()))
            .hstack(&Mat::zeros(field, f.rows(), ff.cols()))
            .hstack(&Mat::zeros(field, f.rows(), fq_cols));
        let bottom = Mat::zeros(field, r.rows(), f.cols())
            .hstack(&r)
            .hstack(&ff)
            .hstack(&Mat::zeros(field, r.rows(), fq_cols));
        assert_eq!(zcf.normal, top.vstack(&bottom));
        let z_pres = pair_minimal_presentation(&functor_z(ext, &x));
        assert!(
            pair_complexes_isomorphic(&z_pres.f, &zcf.mid, round),
            "Z closed form differs for dims {:?}",
            x.dims
        );
    }
    println!("criterion 7 (presentation closed forms for T and Z, 50 random modules): pass");
}

#[test]
fn criterion_8_summand_counts_and_regular_module() {
    for file in ["ex41.alg", "ex42.alg"] {
        let resolved = resolve_input(&examples_dir().join(file), None).unwrap();
        let ext = &resolved.ext;
        let algebra = &resolved.algebra;
        let out = enumerate_indecomposables(algebra, &cfg(4)).unwrap();
        // Sums of up to two indecomposables keep their summand count
        // through T and Z.
        let n = out.classes.len();
        let mut sums: Vec<Arc<Rep>> = out.classes.clone();
        for i in 0..n {
            for j in i..n {
                sums.push(sum_of(algebra, &out.classes, &[i, j]));
            }
        }
        for x in &sums {
            let count = count_indec_summands(x, 0);
            assert_eq!(pair_count_summands(&functor_t(ext, x), 0), count);
            assert_eq!(pair_count_summands(&functor_z(ext, x), 0), count);
        }
        // The regular module of the extension is T of the regular module.
        let a_module = projective_rep(algebra, &(0..algebra.vertex_count).collect::<Vec<_>>()).rep;
        assert!(pair_is_isomorphic(
            &regular_pair(ext),
            &functor_t(ext, &a_module),
            0
        ));
    }
    println!("criterion 8 (summand counts through T and Z, regular module): pass");
}

#[test]
fn criterion_9_machine_reports_are_byte_identical() {
    let bin = env!("CARGO_BIN_EXE_taucrest");
    let file = examples_dir().join("ex41.alg");
    let run = || {
        let out = std::process::Command::new(bin)
            .args(["verify"])
            .arg(&file)
            .args(["--format", "machine", "--seed", "7"])
            .output()
            .expect("failed to run the binary");
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = run();
    let second = run();
    assert!(!first.is_empty());
    assert_eq!(first, second, "machine reports differ between runs");
    assert!(first.starts_with(b"taucrest-report/1\n"));
    println!("criterion 9 (byte-identical machine reports): pass");
}
