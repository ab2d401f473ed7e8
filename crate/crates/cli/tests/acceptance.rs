//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `--nocapture`). All tolerances are exact equality —
//! the engine computes with exact arithmetic throughout.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rees_core::elim::{
    eliminate, eliminate_chain, tau_at, transversal_candidates, ElimMode, Transversal,
};
use rees_core::field::FieldSpec;
use rees_core::invariants::{gamma, monomial_case, ord_dm, tilde};
use rees_core::parse::parse_poly;
use rees_core::probe::probe_grid;
use rees_core::rees::ReesAlg;
use rees_core::resultant::resultant;
use rees_core::ring::{PointSpec, Ring};
use rees_core::transform::{
    blowup_chart, chart_pullback, check_permissible, commute_elimination, order_along_center,
    pair_transform, BasicObject, CenterSpec,
};
use rees_core::{Monomial, Poly, Rat};

fn alg(ring: &Arc<Ring>, gens: &[(&str, u64)]) -> ReesAlg {
    let gens = gens
        .iter()
        .map(|(s, n)| (parse_poly(ring, s).unwrap(), Rat::new(*n, 1)))
        .collect();
    ReesAlg::new(ring, gens).unwrap()
}

fn ring_q(vars: &[&str]) -> Arc<Ring> {
    Ring::new(
        FieldSpec::Rationals,
        vars.iter().map(|s| s.to_string()).collect(),
    )
    .unwrap()
}

fn ring_fp(p: u64, vars: &[&str]) -> Arc<Ring> {
    Ring::new(
        FieldSpec::with_characteristic(p).unwrap(),
        vars.iter().map(|s| s.to_string()).collect(),
    )
    .unwrap()
}

fn kangaroo() -> (ReesAlg, PointSpec) {
    let r = ring_fp(2, &["X", "Y", "Z"]);
    let g = alg(&r, &[("Z^2 + Y^7 + Y X^4", 2), ("(Y^3 + X^2)^2", 1)]);
    let o = PointSpec::origin(&r);
    (g, o)
}

fn char0_surface() -> (ReesAlg, PointSpec) {
    let r = ring_q(&["x", "y", "z"]);
    let g = alg(&r, &[("z^2 + (x^2 - y^3)^2", 2)])
        .diff_closure()
        .unwrap();
    let o = PointSpec::origin(&r);
    (g, o)
}

struct SuiteMember {
    algebra: ReesAlg,
    tvars: Vec<String>,
    max_m: u32,
}

/// Criterion-4 suite: five algebras, each with two transversal variables at
/// the origin and at least 20 singular probe points.
fn independence_suite() -> Vec<SuiteMember> {
    let member = |a: ReesAlg, max_m: u32| SuiteMember {
        algebra: a.diff_closure().unwrap(),
        tvars: vec!["z".into(), "w".into()],
        max_m,
    };
    vec![
        member(
            alg(&ring_q(&["u", "x", "y", "z", "w"]), &[("z^2 + w^2 + x^2 y^2", 2)]),
            2,
        ),
        member(
            alg(
                &ring_q(&["u", "x", "y", "z", "w"]),
                &[("z^2 + w^2 + (x + y)^2 u^2", 2)],
            ),
            2,
        ),
        member(
            alg(
                &ring_q(&["u", "v", "t", "x", "y", "z", "w"]),
                &[("z^2 + w^2 + x^3 + y^3", 2)],
            ),
            2,
        ),
        member(
            alg(
                &ring_fp(3, &["u", "v", "x", "y", "z", "w"]),
                &[("z^3 + w^3 + x^2 y^2", 3)],
            ),
            1,
        ),
        member(
            alg(
                &ring_fp(2, &["u", "v", "x", "y", "z", "w"]),
                &[("z^2 + w^2 + x^2 y^3", 2)],
            ),
            1,
        ),
    ]
}

fn singular_probes(g: &ReesAlg) -> Vec<PointSpec> {
    probe_grid(g.ring())
        .into_iter()
        .filter(|p| g.is_singular_at(p).unwrap())
        .collect()
}

fn run_session_file(name: &str) -> rees_elim::Report {
    let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../sessions")
        .join(name);
    let text = std::fs::read_to_string(path).expect("session script exists");
    rees_elim::run_script(&text, rees_elim::Options::default())
}

#[test]
fn criterion_01_kangaroo_replay() {
    let started = Instant::now();
    let (g, o) = kangaroo();
    let r = g.ring().clone();

    // Differential closure contains ((Y^3 + X^2)^2, 1).
    let base = alg(&r, &[("Z^2 + Y^7 + Y X^4", 2)]);
    let closed = base.diff_closure().unwrap();
    let square = parse_poly(&r, "(Y^3 + X^2)^2").unwrap();
    assert!(closed
        .gens()
        .iter()
        .any(|(f, w)| *w == Rat::new(1, 1) && *f == square));

    // ord^(d-1) at the origin is 4.
    assert_eq!(ord_dm(&g, &o, 1).unwrap(), Rat::new(4, 1));

    // Origin blow-up, Y-chart: both weak transforms exactly.
    let b = BasicObject::new(g.clone(), &probe_grid(&r)).unwrap();
    let center = CenterSpec::new(vec![0, 1, 2]).unwrap();
    let y = r.var_index("Y").unwrap();
    let b1 = blowup_chart(&b, &center, y, &probe_grid(&r)).unwrap();
    let f1 = parse_poly(&r, "Z^2 + Y^3 (Y + X^2)^2").unwrap();
    let g1 = parse_poly(&r, "Y^3 (Y + X^2)^2").unwrap();
    assert_eq!(
        b1.algebra.gens(),
        &[(f1, Rat::new(2, 1)), (g1, Rat::new(1, 1))]
    );

    // w-ord at the chart origin of the projected companion is 2.
    let chain = eliminate_chain(&g, &o, &["Z".into()]).unwrap();
    let down_ring = chain.stages[0].algebra.ring().clone();
    let out = commute_elimination(&b, &chain, &center, y, &probe_grid(&down_ring)).unwrap();
    let down_o = PointSpec::origin(&down_ring);
    assert_eq!(out.downstairs.w_ord(&down_o).unwrap(), Rat::new(2, 1));

    // The shipped replay script agrees end to end.
    let report = run_session_file("kangaroo.session");
    assert!(report.success(), "{}", report.text);

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "kangaroo replay took {:?}",
        elapsed
    );
    println!("criterion 01 (kangaroo replay, {:?}): PASS", elapsed);
}

#[test]
fn criterion_02_discriminant() {
    let r = ring_q(&["a1", "a2", "Z"]);
    let f = parse_poly(&r, "Z^2 + a1 Z + a2").unwrap();
    let g = ReesAlg::new(&r, vec![(f, Rat::new(2, 1))]).unwrap();
    let z = r.var_index("Z").unwrap();
    let closed = g.rel_diff_closure(z).unwrap();
    let t = Transversal::from_generator(&closed, 0, z).unwrap();
    let elim = eliminate(&closed, &t, ElimMode::Passthrough).unwrap();
    let disc = parse_poly(elim.ring(), "a1^2 - 4 a2").unwrap();
    // The generator is ±(a1^2 - 4 a2) in weight 2, up to sign and unit.
    let hit = elim
        .gens()
        .iter()
        .any(|(f, w)| *w == Rat::new(2, 1) && f.monic() == disc.monic());
    assert!(hit, "discriminant missing: {:?}", elim.gens());

    let report = run_session_file("discriminant.session");
    assert!(report.success(), "{}", report.text);
    println!("criterion 02 (discriminant): PASS");
}

#[test]
fn criterion_03_char0_resolution_example() {
    let mut failures: Vec<String> = Vec::new();
    let mut check = |label: &str, ok: bool, detail: String| {
        if ok {
            println!("  criterion 03 [{}]: pass", label);
        } else {
            println!("  criterion 03 [{}]: FAIL ({})", label, detail);
            failures.push(format!("{}: {}", label, detail));
        }
    };

    let (g, o) = char0_surface();
    let r = g.ring().clone();

    // γ at the origin.
    let v = gamma(&g, &o).unwrap();
    check("gamma origin", v.to_string() == "(1, 2, 3/2)", v.to_string());

    // γ at three rational curve points of small height: (t^3, t^2, 0).
    for t in [1i64, -1, 2] {
        let p = PointSpec::from_i64(&r, &[t * t * t, t * t, 0]).unwrap();
        let v = gamma(&g, &p).unwrap();
        check(
            &format!("gamma at t={}", t),
            v.to_string() == "(1, 1, inf)",
            v.to_string(),
        );
    }

    // Scripted two blow-ups in the y-chart: controlled transforms of the
    // pair (z^2 + (x^2-y^3)^2, 2).
    let j = parse_poly(&r, "z^2 + (x^2 - y^3)^2").unwrap();
    let center = CenterSpec::new(vec![0, 1, 2]).unwrap();
    let y = r.var_index("y").unwrap();
    let j1 = pair_transform(&j, 2, &center, y).unwrap();
    let expect1 = parse_poly(&r, "z^2 + y^2 (x^2 - y)^2").unwrap();
    check("first transform", j1 == expect1, j1.to_string());

    let j2 = pair_transform(&j1, 2, &center, y).unwrap();
    // The pinned reference value for the second transform is
    // z^2 + y^2 x^2 (1 - y)^2. No permissible blow-up of j1 produces it in
    // any chart, with or without a prior linear change: blowing the value
    // back down shows it is the x-chart transform of z^2 + y^2 (x - y)^2,
    // which differs from j1 by a dropped square, and no linear change maps
    // one to the other (the x-degree profiles differ). The true y-chart
    // transform is z^2 + y^2 (x^2 y - 1)^2. The check is kept as pinned
    // and fails honestly.
    let stated = parse_poly(&r, "z^2 + y^2 x^2 (1 - y)^2").unwrap();
    check(
        "second transform as stated",
        j2 == stated,
        format!("engine computes {}", j2),
    );

    // The 2-dimensional object reaches the monomial case after the two
    // blow-ups.
    let r2 = ring_q(&["x", "y"]);
    let q = alg(&r2, &[("(x^2 - y^3)^2", 2)]);
    let grid2 = probe_grid(&r2);
    let b0 = BasicObject::new(q, &grid2).unwrap();
    let c2 = CenterSpec::new(vec![0, 1]).unwrap();
    let y2 = r2.var_index("y").unwrap();
    let b1 = blowup_chart(&b0, &c2, y2, &grid2).unwrap();
    let b2 = blowup_chart(&b1, &c2, y2, &grid2).unwrap();
    let origin2 = PointSpec::origin(&r2);
    let report = monomial_case(&b2, &[origin2]).unwrap();
    check(
        "monomial case after two blow-ups",
        report.monomial,
        format!("max w-ord {}", report.max_w_ord),
    );

    if failures.is_empty() {
        println!("criterion 03 (char-0 resolution example): PASS");
    } else {
        println!("criterion 03 (char-0 resolution example): FAIL");
        panic!(
            "criterion 03 sub-assertions failed; the pinned reference value is \
             not reproducible by any permissible transformation (see comments): {:?}",
            failures
        );
    }
}

#[test]
fn criterion_04_projection_independence() {
    let mut algebras = 0;
    for m in independence_suite() {
        let g = &m.algebra;
        let origin = PointSpec::origin(g.ring());
        let sing = singular_probes(g);
        assert!(
            sing.len() >= 20,
            "member {} offers only {} singular probes",
            algebras,
            sing.len()
        );
        let mut orders: Vec<Vec<String>> =
            vec![vec![m.tvars[0].clone()], vec![m.tvars[1].clone()]];
        if m.max_m >= 2 {
            orders.push(vec![m.tvars[0].clone(), m.tvars[1].clone()]);
            orders.push(vec![m.tvars[1].clone(), m.tvars[0].clone()]);
        }
        for depth in 1..=m.max_m as usize {
            let depth_orders: Vec<&Vec<String>> =
                orders.iter().filter(|o| o.len() == depth).collect();
            let chains: Vec<_> = depth_orders
                .iter()
                .map(|o| eliminate_chain(g, &origin, o).unwrap())
                .collect();
            for p in &sing {
                let mut values = Vec::new();
                for (chain, order) in chains.iter().zip(&depth_orders) {
                    let mut cur = p.clone();
                    let mut ring = g.ring().clone();
                    for name in order.iter() {
                        let idx = ring.var_index(name).unwrap();
                        cur = cur.without_coord(idx);
                        ring = ring.without_var(idx).unwrap();
                    }
                    values.push(chain.final_algebra(g).ord_at(&cur).unwrap());
                }
                assert!(
                    values.windows(2).all(|w| w[0] == w[1]),
                    "ord^(d-{}) differs at {}: {:?}",
                    depth,
                    p.format(g.ring()),
                    values
                );
            }
        }
        algebras += 1;
    }
    assert!(algebras >= 5);
    println!(
        "criterion 04 (projection independence, {} algebras): PASS",
        algebras
    );
}

#[test]
fn criterion_05_tau_drop() {
    let mut checked = 0;
    for m in independence_suite() {
        let g = &m.algebra;
        let origin = PointSpec::origin(g.ring());
        let Ok(tau_up) = tau_at(g, &origin) else {
            continue; // τ undetermined: excluded by the criterion.
        };
        if tau_up.tau == 0 {
            continue;
        }
        let chain = eliminate_chain(g, &origin, &m.tvars[..1]).unwrap();
        let down = chain.final_algebra(g).diff_closure().unwrap();
        let image = chain.final_point(&origin);
        let tau_down = if down.is_simple_at(image).unwrap_or(false) {
            tau_at(&down, image).expect("determined downstairs").tau
        } else {
            // The tangent ideal is zero at a non-simple point.
            0
        };
        assert_eq!(tau_down, tau_up.tau - 1);
        checked += 1;
    }
    assert!(checked >= 4, "only {} members had determined tau >= 1", checked);
    println!("criterion 05 (tau drop, {} members): PASS", checked);
}

#[test]
fn criterion_06_resultant_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let mut total = 0;
    for field in [
        FieldSpec::Rationals,
        FieldSpec::with_characteristic(5).unwrap(),
    ] {
        let ring = Ring::new(field.clone(), vec!["a".into(), "b".into(), "Z".into()]).unwrap();
        let z = ring.var_index("Z").unwrap();
        let mut done = 0;
        while done < 50 {
            let n = rng.gen_range(1..=3u32);
            let mut f = Poly::var(&ring, z).pow(n);
            for k in 0..n {
                let c = random_base_poly(&mut rng, &ring, 2);
                f = f.add(&c.mul(&Poly::var(&ring, z).pow(k)));
            }
            let g = random_full_poly(&mut rng, &ring, 3);
            if g.is_zero() {
                continue;
            }
            let alg = ReesAlg::new(&ring, vec![(f.clone(), Rat::new(n as u64, 1))]).unwrap();
            let t = Transversal::from_generator(&alg, 0, z).unwrap();
            // Constant characteristic coefficient = determinant of the
            // multiplication matrix; compare against the Sylvester route.
            let det = multiplication_determinant(&g, &t).unwrap();
            let res = resultant(&f, &g, z).unwrap();
            assert!(
                det == res || det == res.neg(),
                "det = ±res failed for F = {}, g = {}",
                f,
                g
            );
            done += 1;
            total += 1;
        }
    }
    assert_eq!(total, 100);
    println!("criterion 06 (resultant oracle, {} instances): PASS", total);
}

#[test]
fn criterion_07_commutation() {
    // Kangaroo plus the char-0 surface, across every chart of one blow-up
    // that survives downstairs.
    let mut charts_checked = 0;

    let (kg, ko) = kangaroo();
    let kb = BasicObject::new(kg.clone(), &probe_grid(kg.ring())).unwrap();
    let kchain = eliminate_chain(&kg, &ko, &["Z".into()]).unwrap();
    let kcenter = CenterSpec::new(vec![0, 1, 2]).unwrap();
    let kdown = kchain.stages[0].algebra.ring().clone();
    for chart in ["X", "Y"] {
        let idx = kg.ring().var_index(chart).unwrap();
        let out =
            commute_elimination(&kb, &kchain, &kcenter, idx, &probe_grid(&kdown)).unwrap();
        assert!(out.all_equal, "kangaroo chart {}", chart);
        charts_checked += 1;
    }

    let (sg, so) = char0_surface();
    let sb = BasicObject::new(sg.clone(), &probe_grid(sg.ring())).unwrap();
    let schain = eliminate_chain(&sg, &so, &["z".into()]).unwrap();
    let scenter = CenterSpec::new(vec![0, 1, 2]).unwrap();
    let sdown = schain.stages[0].algebra.ring().clone();
    for chart in ["x", "y"] {
        let idx = sg.ring().var_index(chart).unwrap();
        let out =
            commute_elimination(&sb, &schain, &scenter, idx, &probe_grid(&sdown)).unwrap();
        assert!(out.all_equal, "surface chart {}", chart);
        charts_checked += 1;
    }

    // Suite members: blow up the origin (permissible whenever the origin
    // lies in the singular locus and the generators allow it).
    for m in independence_suite() {
        let g = &m.algebra;
        let ring = g.ring().clone();
        let origin = PointSpec::origin(&ring);
        let b = BasicObject::new(g.clone(), &probe_grid(&ring)).unwrap();
        let chain = eliminate_chain(g, &origin, &m.tvars[..1]).unwrap();
        let all: Vec<usize> = (0..ring.nvars()).collect();
        let center = CenterSpec::new(all).unwrap();
        if !check_permissible(&b, &center).unwrap().permissible {
            continue;
        }
        let down_ring = chain.stages[0].algebra.ring().clone();
        let elim_name = &m.tvars[0];
        for chart in 0..ring.nvars() {
            if ring.var_name(chart) == elim_name {
                continue;
            }
            let out = commute_elimination(
                &b,
                &chain,
                &center,
                chart,
                &probe_grid(&down_ring),
            )
            .unwrap();
            assert!(
                out.all_equal,
                "suite member chart {}",
                ring.var_name(chart)
            );
            charts_checked += 1;
        }
    }
    println!(
        "criterion 07 (commutation, {} charts): PASS",
        charts_checked
    );
}

#[test]
fn criterion_08_algebra_identities() {
    let members: Vec<ReesAlg> = {
        let q3 = ring_q(&["x", "y", "z"]);
        let f2 = ring_fp(2, &["X", "Y", "Z"]);
        let f3 = ring_fp(3, &["u", "v", "w"]);
        vec![
            alg(&q3, &[("z^2 + (x^2 - y^3)^2", 2)]),
            alg(&q3, &[("z^2", 2), ("x y", 1)]),
            alg(&f2, &[("Z^2 + Y^7 + Y X^4", 2), ("(Y^3 + X^2)^2", 1)]),
            alg(&f3, &[("w^3 + u^2 v^2", 3), ("u v", 1)]),
        ]
    };
    let omegas = [
        Rat::new(1, 2),
        Rat::new(1, 1),
        Rat::new(2, 1),
        Rat::new(3, 1),
    ];
    for g in &members {
        let grid = probe_grid(g.ring());
        // Twist identity: ω · ord(G(ω)) = ord(G), exactly.
        for omega in omegas {
            let t = g.twist(omega).unwrap();
            for p in &grid {
                assert_eq!(t.ord_at(p).unwrap() * omega, g.ord_at(p).unwrap());
            }
        }
        // Differential closure fixes the singular locus.
        let closed = g.diff_closure().unwrap();
        for p in &grid {
            assert_eq!(
                g.is_singular_at(p).unwrap(),
                closed.is_singular_at(p).unwrap()
            );
        }
        // Join = intersection of singular loci.
        for h in &members {
            if h.ring() != g.ring() {
                continue;
            }
            let join = g.odot(h).unwrap();
            for p in &grid {
                assert_eq!(
                    join.is_singular_at(p).unwrap(),
                    g.is_singular_at(p).unwrap() && h.is_singular_at(p).unwrap()
                );
            }
        }
    }
    println!("criterion 08 (algebra identities): PASS");
}

#[test]
fn criterion_09_tilde_contract() {
    for (g, _name) in [(kangaroo().0, "kangaroo"), (char0_surface().0, "surface")] {
        let grid = probe_grid(g.ring());
        let gd = g.diff_closure().unwrap();
        let mut values = Vec::new();
        for p in &grid {
            if g.is_singular_at(p).unwrap() && gd.is_simple_at(p).unwrap_or(false) {
                values.push((p.clone(), ord_dm(&g, p, 1).unwrap()));
            }
        }
        let max = values.iter().map(|(_, v)| *v).max().unwrap();
        let anchor = values
            .iter()
            .find(|(_, v)| *v == max)
            .map(|(p, _)| p.clone())
            .unwrap();
        let t = tilde(&g, &anchor, 1).unwrap();
        for (p, v) in &values {
            assert_eq!(
                t.is_singular_at(p).unwrap(),
                *v == max,
                "Sing G̃ vs max-ord stratum at {}",
                p.format(g.ring())
            );
        }
        let tau = tau_at(&t, &anchor).unwrap();
        assert!(tau.tau >= 2);
    }
    println!("criterion 09 (tilde contract): PASS");
}

#[test]
fn criterion_10_transform_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFACADE);
    let rings = [
        ring_q(&["x", "y", "z"]),
        ring_fp(2, &["x", "y", "z"]),
        ring_fp(5, &["x", "y", "z", "w"]),
    ];
    let mut done = 0;
    while done < 500 {
        let ring = &rings[rng.gen_range(0..rings.len())];
        let n = ring.nvars();
        let nterms = rng.gen_range(1..5);
        let f = random_poly_any(&mut rng, ring, 3, nterms);
        if f.is_zero() {
            continue;
        }
        let k = rng.gen_range(1..=n);
        let mut vars: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            vars.swap(i, rng.gen_range(0..=i));
        }
        vars.truncate(k);
        let center = CenterSpec::new(vars).unwrap();
        let chart = center.vars[rng.gen_range(0..center.vars.len())];
        let nu = order_along_center(&f, &center);
        let total = chart_pullback(&f, &center, chart);
        let e = Poly::var(ring, chart);
        // Exact divisibility by the order along the center; reconstruction.
        let weak = pair_transform(&f, nu, &center, chart).unwrap();
        assert_eq!(weak.mul(&e.pow(nu)), total);
        // divide_out reconstruction on the same data.
        if !weak.is_constant() {
            let (mult, rest) = total.divide_out(&e).unwrap();
            assert_eq!(rest.mul(&e.pow(mult)), total);
            assert!(mult >= nu);
        }
        done += 1;
    }
    println!("criterion 10 (transform fuzz, {} instances): PASS", done);
}

fn random_base_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_deg: u32) -> Poly {
    let mut acc = Poly::zero(ring);
    for _ in 0..rng.gen_range(0..4) {
        let ea = rng.gen_range(0..=max_deg);
        let eb = rng.gen_range(0..=max_deg.saturating_sub(ea));
        let c = rng.gen_range(-4i64..=4);
        acc = acc.add(&Poly::monomial(
            ring,
            Monomial(vec![ea, eb, 0]),
            ring.field().from_i64(c),
        ));
    }
    acc
}

fn random_full_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_total: u32) -> Poly {
    let mut acc = Poly::zero(ring);
    for _ in 0..rng.gen_range(1..5) {
        let ea = rng.gen_range(0..=max_total);
        let eb = rng.gen_range(0..=max_total - ea);
        let ez = rng.gen_range(0..=max_total - ea - eb);
        let c = rng.gen_range(-4i64..=4);
        acc = acc.add(&Poly::monomial(
            ring,
            Monomial(vec![ea, eb, ez]),
            ring.field().from_i64(c),
        ));
    }
    acc
}

fn random_poly_any(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_exp: u32, terms: usize) -> Poly {
    let n = ring.nvars();
    let mut acc = Poly::zero(ring);
    for _ in 0..terms {
        let expo: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        let c = rng.gen_range(-5i64..=5);
        acc = acc.add(&Poly::monomial(
            ring,
            Monomial(expo),
            ring.field().from_i64(c),
        ));
    }
    acc
}

fn multiplication_determinant(g: &Poly, t: &Transversal) -> Option<Poly> {
    let ring = g.ring().clone();
    let n = t.degree as usize;
    let mut power = g.div_rem_in_var(&t.monic_form, t.var).ok()?.1;
    let zed = Monomial::var(ring.nvars(), t.var);
    let mut rows = vec![vec![Poly::zero(&ring); n]; n];
    for j in 0..n {
        if j > 0 {
            power = power
                .mul_monomial(&zed)
                .div_rem_in_var(&t.monic_form, t.var)
                .ok()?
                .1;
        }
        let mut col = power.coeffs_in_var(t.var);
        col.resize(n, Poly::zero(&ring));
        for (row, entry) in rows.iter_mut().zip(&col) {
            row[j] = entry.clone();
        }
    }
    rees_core::matrix::poly_determinant(&ring, &rows).ok()
}

#[test]
fn criterion_07b_transversal_survives_transforms() {
    // The commuting square also needs the upstairs transversal to stay
    // valid after the blow-up; transversal_candidates must find it there.
    let (kg, ko) = kangaroo();
    let kb = BasicObject::new(kg.clone(), &probe_grid(kg.ring())).unwrap();
    let center = CenterSpec::new(vec![0, 1, 2]).unwrap();
    let y = kg.ring().var_index("Y").unwrap();
    let b1 = blowup_chart(&kb, &center, y, &probe_grid(kg.ring())).unwrap();
    let z = kg.ring().var_index("Z").unwrap();
    let o1 = PointSpec::origin(kg.ring());
    let cands = transversal_candidates(&b1.algebra, &o1, z).unwrap();
    assert!(!cands.is_empty());
    let _ = ko;
    println!("criterion 07b (transversality persists): PASS");
}
