//! The seven acceptance criteria. Each runs under its time budget and writes
//! one PASS/FAIL line straight to stdout, so the lines show up even when the
//! harness captures test output.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use dblcat::cat::{chain_category, coproduct, discrete, iso_check, product};
use dblcat::dblcat::{box_product, double_nerve, h_embed, horizontal_nerve_level, v_embed, validate_double_category};
use dblcat::error::Axiom;
use dblcat::fixtures::{glued_vertical_pushout, parity_squares, pushout_specs};
use dblcat::groth::{check_pullback_preservation, completeness_source, grothendieck_cat, spine_source, Diagram};
use dblcat::homology::{betti, we_witness, Ring};
use dblcat::pushout::{pushout_dbl_box_sieve, verify_nerve_preserves_pushout};
use dblcat::sset::{beta, csd2_inclusion, csd2_poset, nerve, poset_nerve, sd_poset, standard, Shape, SimplicialMap};
use dblcat::FinDblCat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Corruption<'a> = (&'a str, Box<dyn Fn(&mut FinDblCat) + 'a>, &'a str, Axiom);
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn subdivided_inclusions_are_weakly_solid_sieves() -> Outcome {
    let mut checked = 0;
    let mut cases: Vec<(Shape, usize)> = (1..=4).map(|k| (Shape::Boundary, k)).collect();
    for k in 1..=3 {
        cases.extend((0..=k).map(|t| (Shape::Horn(t), k)));
    }
    for (shape, k) in cases {
        let inc = csd2_inclusion(shape, k).map_err(|e| e.to_string())?;
        ensure(inc.is_sieve(), || format!("{shape} k={k} is not a sieve"))?;
        ensure(inc.is_weakly_solid().map_err(|e| e.to_string())?, || format!("{shape} k={k} is not weakly solid"))?;
        checked += 1;
    }
    Ok(format!("{checked} inclusions are weakly solid sieves"))
}

/// Strict chains of nonempty subsets of a `k + 1`-set, counted by the size
/// of their top set: `top(n) = 1 + Σ_{j<n} C(n, j) top(j)`.
fn chain_oracle(k: usize) -> usize {
    let mut top = vec![0usize; k + 2];
    for n in 1..=k + 1 {
        top[n] = 1 + (1..n).map(|j| binomial(n, j) * top[j]).sum::<usize>();
    }
    (1..=k + 1).map(|j| binomial(k + 1, j) * top[j]).sum()
}

fn chain_counts() -> Outcome {
    for (k, want) in [(1, 5), (2, 25)] {
        let p = csd2_poset(Shape::Simplex, k).map_err(|e| e.to_string())?;
        ensure(p.len() == want && chain_oracle(k) == want, || {
            format!("|cSd²Δ[{k}]| = {}, oracle {}", p.len(), chain_oracle(k))
        })?;
        // the same chains are the nondegenerate simplices of Sd Δ[k]
        let sd = poset_nerve(&sd_poset(&standard(Shape::Simplex, k, k).unwrap()).unwrap(), k).unwrap();
        let total: usize = sd.nondegenerate_counts().iter().sum();
        ensure(total == want, || format!("Sd Δ[{k}] has {total} nondegenerate simplices"))?;
    }
    for n in 0..=4 {
        let x = nerve(&chain_category(n), 4).map_err(|e| e.to_string())?;
        for k in 0..=4 {
            ensure(x.count(k) == binomial(n + k + 1, k + 1), || format!("N[{n}]_{k} = {}", x.count(k)))?;
        }
    }
    Ok("|cSd²Δ[1]| = 5, |cSd²Δ[2]| = 25, nerve counts of [n] binomial for n, k ≤ 4".into())
}

fn nerve_preserves_pushouts() -> Outcome {
    let specs = pushout_specs();
    ensure(specs.len() >= 5, || "fewer than five specs".into())?;
    for (name, spec) in &specs {
        let verdicts = verify_nerve_preserves_pushout(spec, 3).map_err(|e| format!("{name}: {e}"))?;
        ensure(verdicts.len() == 4 && verdicts.iter().all(|v| v.isomorphic), || format!("{name}: {verdicts:?}"))?;
    }
    let p = pushout_dbl_box_sieve(&glued_vertical_pushout()).map_err(|e| e.to_string())?;
    let dn = double_nerve(&p.dbl, 3, 3).map_err(|e| e.to_string())?;
    for n in 0..=3 {
        let points = discrete((0..=n).map(|i| format!("p{i}")).collect());
        let expected = Arc::new(coproduct(&points, &chain_category(1)).unwrap());
        let level = Arc::new(horizontal_nerve_level(&p.dbl, n).map_err(|e| e.to_string())?);
        ensure(iso_check(&level, &expected).is_found(), || format!("level {n} is not (n+1 points) ⊔ [1]"))?;
        // column n of the double nerve: n + 1 points plus Δ[1]
        for k in 0..=3 {
            ensure(dn.count(n, k) == n + 1 + k + 2, || format!("double nerve ({n},{k}) has {} cells", dn.count(n, k)))?;
        }
    }
    Ok(format!("{} specs at m ≤ 3; glued-vertical levels are (n+1 points) ⊔ [1]", specs.len()))
}

fn grothendieck_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..20 {
        let j = common::random_shape(&mut rng, 5);
        let g =
            grothendieck_cat(&Diagram::constant(j.clone(), Arc::new(chain_category(0)))).map_err(|e| e.to_string())?;
        ensure(iso_check(&g.cat, &j).is_found(), || format!("shape {i}: ∫ const [0] is not J"))?;
    }
    for k in 0..=2 {
        let j = common::random_shape(&mut rng, 4);
        let c = Arc::new(chain_category(k));
        let g = grothendieck_cat(&Diagram::constant(j.clone(), c.clone())).map_err(|e| e.to_string())?;
        ensure(iso_check(&g.cat, &Arc::new(product(&j, &c).unwrap())).is_found(), || {
            format!("∫ const [{k}] is not J × [{k}]")
        })?;
    }
    for i in 0..10 {
        let cs = common::random_cospan(&mut rng);
        let v = check_pullback_preservation(&cs.d1, &cs.d2, &cs.d3, &cs.alpha, &cs.beta).map_err(|e| e.to_string())?;
        ensure(v.isomorphic, || format!("cospan {i}: {:?}", v.counterexample))?;
    }
    Ok("20 constant-point shapes, 3 constant products, 10 cospans".into())
}

fn localization_fixtures() -> Outcome {
    let (two, f2) = spine_source(2).map_err(|e| e.to_string())?;
    ensure(two.counts() == (5, 2, 2, 0), || format!("spine_source(2) counts {:?}", two.counts()))?;
    let mut maps = vec![f2];
    for n in 3..=6 {
        let (s, f) = spine_source(n).map_err(|e| e.to_string())?;
        ensure(s.object_count() == 3 * n - 1, || format!("spine_source({n}) has {} objects", s.object_count()))?;
        maps.push(f);
    }
    let (c, fc) = completeness_source().map_err(|e| e.to_string())?;
    ensure(c.counts() == (10, 8, 8, 4), || format!("completeness_source counts {:?}", c.counts()))?;
    maps.push(fc);
    for f in &maps {
        ensure(f.validate().is_empty(), || format!("comparison is not a double functor: {:?}", f.validate()))?;
        ensure(f.collapses_verticals(), || "comparison keeps a vertical".into())?;
    }
    Ok("spine (5,2,2,0), 3n−1 objects for n ≤ 6, completeness (10,8,8,4); comparisons collapse verticals".into())
}

fn homology_witnesses() -> Outcome {
    for k in 1..=3 {
        let x = poset_nerve(&csd2_poset(Shape::Simplex, k).unwrap(), 3).map_err(|e| e.to_string())?;
        for ring in [Ring::Rationals, Ring::Integers, Ring::Mod2] {
            let h = betti(&x, ring);
            ensure(h.known_betti() == vec![1, 0, 0] && !h.has_torsion(), || {
                format!("cSd²Δ[{k}] over {ring}: {:?}", h.degrees)
            })?;
        }
    }
    let shapes = [(Shape::Simplex, "Δ[2]"), (Shape::Boundary, "∂Δ[2]"), (Shape::Horn(1), "Λ¹[2]")];
    for (shape, name) in shapes {
        let x = standard(shape, 2, 2).unwrap();
        let v = we_witness(&beta(&x, 2).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
        ensure(v.valid_through == Some(1) && v.passes(), || format!("β on {name}: {v:?}"))?;
    }
    let boundary = Arc::new(standard(Shape::Boundary, 2, 3).unwrap());
    let simplex = Arc::new(standard(Shape::Simplex, 2, 3).unwrap());
    let inc = SimplicialMap::from_keys(boundary, simplex, |_, key| key.to_vec()).map_err(|e| e.to_string())?;
    let v = we_witness(&inc, 3).map_err(|e| e.to_string())?;
    ensure(v.first_failure() == Some(1), || format!("∂Δ[2] → Δ[2]: {v:?}"))?;
    Ok("cSd²Δ[k] acyclic through degree 2 (k ≤ 3); β passes on Δ[2], ∂Δ[2], Λ¹[2]; ∂Δ[2] → Δ[2] fails at 1".into())
}

fn constructor_outputs() -> Vec<(String, FinDblCat)> {
    let mut out: Vec<(String, FinDblCat)> = vec![
        ("h_embed [2]".into(), h_embed(&chain_category(2)).unwrap()),
        ("v_embed [2]".into(), v_embed(&chain_category(2)).unwrap()),
        ("[1] ⊠ [1]".into(), box_product(&chain_category(1), &chain_category(1)).unwrap()),
        ("[2] ⊠ [1]".into(), box_product(&chain_category(2), &chain_category(1)).unwrap()),
        (
            "product".into(),
            dblcat::dblcat::product(&h_embed(&chain_category(1)).unwrap(), &v_embed(&chain_category(1)).unwrap())
                .unwrap(),
        ),
        ("parity squares".into(), parity_squares()),
        ("completeness".into(), completeness_source().unwrap().0),
    ];
    for n in 2..=4 {
        out.push((format!("spine {n}"), spine_source(n).unwrap().0));
    }
    for (name, spec) in pushout_specs() {
        out.push((format!("pushout {name}"), (*pushout_dbl_box_sieve(&spec).unwrap().dbl).clone()));
    }
    out
}

fn axiom_validators() -> Outcome {
    let outputs = constructor_outputs();
    for (name, a) in &outputs {
        let report = validate_double_category(a);
        ensure(report.is_empty(), || format!("{name} rejected: {report:?}"))?;
    }
    let base = parity_squares();
    let sq = |l: &str| base.a1().find_morphism(l).unwrap();
    let vert = |l: &str| base.a0().find_morphism(l).unwrap();
    let (e, e2, big) = (sq("e"), sq("e'"), sq("E"));
    let unit_sq = base.i().on_morphism(vert("id_0"));
    let id_f = base.a1().identity(base.a1().find_object("f").unwrap());
    let corruptions: Vec<Corruption> = vec![
        ("interchange", Box::new(move |a| a.override_hpaste(e, e2, big).unwrap()), "c", Axiom::Interchange),
        ("unit", Box::new(move |a| a.override_hpaste(unit_sq, e, id_f).unwrap()), "c", Axiom::HorizontalUnit),
        ("source", Box::new(move |a| a.override_s(e, vert("id_1"))), "s", Axiom::PreservesSource),
        ("target", Box::new(move |a| a.override_t(e2, vert("id_0"))), "t", Axiom::PreservesTarget),
        ("unit source", Box::new(move |a| a.override_i(vert("id_1"), e)), "i", Axiom::SourceOfUnit),
    ];
    for (name, corrupt, location, axiom) in &corruptions {
        let mut a = base.clone();
        corrupt(&mut a);
        let report = validate_double_category(&a);
        ensure(report.iter().any(|v| v.location == *location && v.axiom == *axiom && !v.witness.is_empty()), || {
            format!("{name}: expected [{location}] {axiom}, got {report:?}")
        })?;
    }
    Ok(format!("{} constructor outputs accepted, {} corruptions located", outputs.len(), corruptions.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 7] = [
        ("1 weakly solid sieves", subdivided_inclusions_are_weakly_solid_sieves, 10),
        ("2 chain-poset counts", chain_counts, 5),
        ("3 nerve preserves pushouts", nerve_preserves_pushouts, 30),
        ("4 Grothendieck suite", grothendieck_suite, 30),
        ("5 localization fixtures", localization_fixtures, 10),
        ("6 homology witnesses", homology_witnesses, 60),
        ("7 axiom validators", axiom_validators, 10),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("took {elapsed:.1?}, budget {budget} s"))
            } else {
                Ok(detail)
            }
        });
        let line = match &outcome {
            Ok(detail) => format!("acceptance {name}: PASS ({elapsed:.2?}) {detail}"),
            Err(why) => format!("acceptance {name}: FAIL ({elapsed:.2?}) {why}"),
        };
        writeln!(std::io::stdout().lock(), "{line}").unwrap();
        if outcome.is_err() {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
