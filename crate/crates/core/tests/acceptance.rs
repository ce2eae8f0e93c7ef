//! Acceptance suite: one PASS/FAIL line per criterion, printed with
//! `cargo test -p kmetric-core --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use common::{oracle_dim, oracle_dimensional_k, random_connected, rng};
use kmetric::constructions::{
    complete, corona, cycle, fan, path, petersen, star, wheel, CoronaSpec,
};
use kmetric::formulas::{self, Applicability, TwinPrediction};
use kmetric::harness::check_corona_basis;
use kmetric::metric_sets::{c_of_family, dimensional_k};
use kmetric::solver::{self, SolverConfig};
use kmetric::{Error, Graph};
use rand::Rng;

type Outcome = Result<String, String>;

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn dim(g: &Graph, k: usize) -> usize {
    solver::dim_k(g, k).unwrap()
}

fn check_eq(what: &str, got: usize, want: usize) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want}"))
    }
}

/// Solves coronas and audits every witness for basis structure.
#[derive(Default)]
struct Audited {
    witnesses: usize,
    failures: Vec<String>,
}

impl Audited {
    fn dim(&mut self, name: &str, spec: &CoronaSpec, k: usize) -> usize {
        let (g, layout) = corona(spec);
        let r = solver::basis(&g, k, &cfg()).unwrap();
        self.witnesses += 1;
        if let Err(e) = check_corona_basis(spec, &layout, &r.witness, k) {
            self.failures.push(format!("{name} k={k}: {e}"));
        }
        r.dim
    }
}

fn uniform(base: Graph, h: Graph) -> CoronaSpec {
    CoronaSpec::uniform(base, &h).unwrap()
}

fn bases() -> [(&'static str, Graph); 3] {
    [("P2", path(2).unwrap()), ("P3", path(3).unwrap()), ("C3", cycle(3).unwrap())]
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for n in 6..=14 {
        let f = fan(n).unwrap();
        check_eq(&format!("dim2(F{n})"), dim(&f, 2), (n + 1).div_ceil(2))?;
        check_eq(&format!("dim3(F{n})"), dim(&f, 3), n - (n - 4) / 5)?;
        checked += 2;
    }
    for (n, k, want) in [(2, 2, 3), (3, 2, 4), (4, 2, 4), (5, 2, 4), (4, 3, 5), (5, 3, 5)] {
        check_eq(&format!("dim{k}(F{n})"), dim(&fan(n).unwrap(), k), want)?;
        checked += 1;
    }
    Ok(format!("{checked} fan values exact"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for n in 7..=12 {
        let w = wheel(n).unwrap();
        check_eq(&format!("dim2(W{n})"), dim(&w, 2), n.div_ceil(2))?;
        check_eq(&format!("dim3(W{n})"), dim(&w, 3), n - n / 5)?;
        check_eq(&format!("dim4(W{n})"), dim(&w, 4), n)?;
        checked += 3;
    }
    let small = [
        (3, 2, 4),
        (4, 2, 4),
        (5, 2, 4),
        (6, 2, 4),
        (5, 3, 5),
        (6, 3, 5),
        (5, 4, 6),
        (6, 4, 6),
    ];
    for (n, k, want) in small {
        check_eq(&format!("dim{k}(W{n})"), dim(&wheel(n).unwrap(), k), want)?;
        checked += 1;
    }
    Ok(format!("{checked} wheel values exact"))
}

fn criterion_3() -> Outcome {
    let general = |n: usize| (2 * n + 2) / 5;
    for n in 2..=14 {
        let want = match n {
            2 | 3 => 2,
            6 => 3,
            _ => general(n),
        };
        check_eq(&format!("dim1(F{n})"), dim(&fan(n).unwrap(), 1), want)?;
        check_eq(&format!("fan_dim({n},1)"), formulas::fan_dim(n, 1).unwrap(), want)?;
    }
    for n in 3..=14 {
        let want = match n {
            3 | 6 => 3,
            4 | 5 => 2,
            _ => general(n),
        };
        check_eq(&format!("dim1(W{n})"), dim(&wheel(n).unwrap(), 1), want)?;
        check_eq(&format!("wheel_dim({n},1)"), formulas::wheel_dim(n, 1).unwrap(), want)?;
    }
    Ok("fans 2..14 and wheels 3..14 match".into())
}

fn criterion_4() -> Outcome {
    for n in 4..=12 {
        check_eq(&format!("k'(F{n})"), dimensional_k(&fan(n).unwrap()).unwrap(), 3)?;
    }
    for n in 5..=12 {
        check_eq(&format!("k'(W{n})"), dimensional_k(&wheel(n).unwrap()).unwrap(), 4)?;
    }
    for n in 5..=8 {
        for b in [2, 3] {
            let spec = uniform(path(b).unwrap(), cycle(n).unwrap());
            check_eq(&format!("k'(P{b}⊙C{n})"), dimensional_k(&corona(&spec).0).unwrap(), 4)?;
        }
    }
    let mut r = rng(4);
    for i in 0..50 {
        let nb = r.gen_range(2..=4);
        let base = random_connected(&mut r, nb, 0.5);
        let hs: Vec<Graph> = (0..nb)
            .map(|_| {
                let n = r.gen_range(2..=6);
                random_connected(&mut r, n, 0.4)
            })
            .collect();
        let c = c_of_family(&hs).unwrap();
        let g = corona(&CoronaSpec::new(base, hs).unwrap()).0;
        check_eq(&format!("random corona #{i}"), oracle_dimensional_k(&g), c)?;
        check_eq(&format!("random corona #{i} (library)"), dimensional_k(&g).unwrap(), c)?;
    }
    Ok("fans, wheels, cycle coronas and 50 random coronas".into())
}

fn criterion_5(audit: &mut Audited) -> Outcome {
    for (name, base) in bases() {
        let n = base.order();
        let p4 = uniform(base.clone(), path(4).unwrap());
        check_eq(&format!("dim3({name}⊙P4)"), audit.dim(name, &p4, 3), 4 * n)?;
        let c6 = uniform(base, cycle(6).unwrap());
        check_eq(&format!("dim4({name}⊙C6)"), audit.dim(name, &c6, 4), 6 * n)?;
    }
    Ok("P2, P3, C3 bases exact".into())
}

fn criterion_6(audit: &mut Audited) -> Outcome {
    let all_twin: Vec<(&str, Vec<Graph>)> = vec![
        ("K2,K2", vec![complete(2).unwrap(), complete(2).unwrap()]),
        ("K3,K4", vec![complete(3).unwrap(), complete(4).unwrap()]),
        ("C4,K2,K3", vec![cycle(4).unwrap(), complete(2).unwrap(), complete(3).unwrap()]),
        ("C4,C4", vec![cycle(4).unwrap(), cycle(4).unwrap()]),
        ("K3,K3,K3", vec![complete(3).unwrap(), complete(3).unwrap(), complete(3).unwrap()]),
    ];
    let not_all_twin: Vec<(&str, Vec<Graph>)> = vec![
        ("P4,P4", vec![path(4).unwrap(), path(4).unwrap()]),
        ("C4,P4", vec![cycle(4).unwrap(), path(4).unwrap()]),
        ("K3,P5,K2", vec![complete(3).unwrap(), path(5).unwrap(), complete(2).unwrap()]),
        ("P3,C5", vec![path(3).unwrap(), cycle(5).unwrap()]),
    ];
    let mut seen = [0, 0];
    for (twin, set) in [(true, all_twin), (false, not_all_twin)] {
        for (name, hs) in set {
            let base = path(hs.len()).unwrap();
            let spec = CoronaSpec::new(base, hs).unwrap();
            let total = spec.attached_order();
            let d = audit.dim(name, &spec, 2);
            if (d == total) != twin {
                return Err(format!("{name}: dim2 = {d}, total {total}, all-twin = {twin}"));
            }
            let predicted = match formulas::twin_dim2_equality(&spec) {
                Applicability::Applies(TwinPrediction::EqualsTotal { .. }) => true,
                Applicability::Applies(TwinPrediction::BelowTotal { .. }) => false,
                Applicability::Inapplicable(why) => return Err(format!("{name}: {why}")),
            };
            if predicted != twin {
                return Err(format!("{name}: prediction disagrees"));
            }
            seen[usize::from(twin)] += 1;
        }
    }
    Ok(format!("{} all-twin and {} other families", seen[1], seen[0]))
}

fn criterion_7(audit: &mut Audited) -> Outcome {
    let mut r = rng(7);
    let (mut instances, mut checks, mut skipped) = (0, 0, 0);
    while instances < 100 {
        let nb = r.gen_range(2..=3);
        let base = random_connected(&mut r, nb, 0.5);
        let hs: Vec<Graph> = (0..nb)
            .map(|_| {
                let n = r.gen_range(2..=5);
                random_connected(&mut r, n, 0.4)
            })
            .collect();
        let spec = CoronaSpec::new(base, hs).unwrap();
        let (g, layout) = corona(&spec);
        instances += 1;
        for k in 1..=dimensional_k(&g).unwrap() {
            let d = match solver::basis(&g, k, &cfg()) {
                Ok(r) => {
                    audit.witnesses += 1;
                    if let Err(e) = check_corona_basis(&spec, &layout, &r.witness, k) {
                        audit.failures.push(format!("random corona {instances} k={k}: {e}"));
                    }
                    r.dim
                }
                Err(Error::ResourceExhausted(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            if let Applicability::Applies((lo, hi)) = formulas::sandwich_bounds(&spec, k, &cfg()).unwrap() {
                if !(lo <= d && d <= hi) {
                    return Err(format!("instance {instances} k={k}: {lo} <= {d} <= {hi} fails"));
                }
                checks += 1;
            }
            if let Applicability::Applies(up) = formulas::k1h_upper_bound(&spec, k, &cfg()).unwrap() {
                if d > up {
                    return Err(format!("instance {instances} k={k}: {d} > K1+H bound {up}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{instances} instances, {checks} bound checks, {skipped} skipped"))
}

fn criterion_8(audit: &mut Audited) -> Outcome {
    let mut confirmed = 0;
    let diam2: [(&str, Graph); 3] = [
        ("K4", complete(4).unwrap()),
        ("S5", star(5).unwrap()),
        ("F5", fan(5).unwrap()),
    ];
    for (name, h) in diam2 {
        for b in [2, 3] {
            let spec = uniform(path(b).unwrap(), h.clone());
            let c = c_of_family(spec.attachments()).unwrap();
            for k in 1..=c {
                match formulas::diam2_equality(&spec, k, &cfg()).unwrap() {
                    Applicability::Applies(v) => {
                        check_eq(&format!("P{b}⊙{name} k={k}"), audit.dim(name, &spec, k), v)?;
                        confirmed += 1;
                    }
                    Applicability::Inapplicable(why) => return Err(format!("P{b}⊙{name}: {why}")),
                }
            }
        }
    }
    for (name, h) in [("C7", cycle(7).unwrap()), ("P7", path(7).unwrap())] {
        let spec = uniform(path(2).unwrap(), h);
        let comp = spec.complemented();
        let coned = spec.coned().unwrap();
        for k in 1..=c_of_family(spec.attachments()).unwrap() {
            let v = match formulas::diam6_equality(&spec, k, &cfg()).unwrap() {
                Applicability::Applies(v) => v,
                Applicability::Inapplicable(why) => return Err(format!("P2⊙{name}: {why}")),
            };
            let a = audit.dim(name, &spec, k);
            let b = audit.dim(name, &comp, k);
            let c = audit.dim(name, &coned, k);
            if !(a == v && b == v && c == v) {
                return Err(format!("P2⊙{name} k={k}: {a}, {b}, {c} vs predicted {v}"));
            }
            confirmed += 1;
        }
    }
    Ok(format!("{confirmed} equalities confirmed"))
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut solves = 0;
    for i in 0..600 {
        let n = r.gen_range(2..=7);
        let p = r.gen_range(0.0..0.8);
        let g = random_connected(&mut r, n, p);
        for k in 1..=oracle_dimensional_k(&g) {
            let got = solver::dim_k(&g, k).map_err(|e| e.to_string())?;
            let want = oracle_dim(&g, k).expect("feasible up to k'");
            if got != want {
                return Err(format!("graph #{i} {:?} k={k}: solver {got}, oracle {want}", g.to_edge_list()));
            }
            solves += 1;
        }
    }
    Ok(format!("600 graphs, {solves} (graph, k) pairs"))
}

fn criterion_10(audit: &Audited) -> Outcome {
    if audit.failures.is_empty() {
        Ok(format!("{} witnesses audited", audit.witnesses))
    } else {
        Err(audit.failures.join("; "))
    }
}

fn criterion_11() -> Outcome {
    let c5 = CoronaSpec::new(path(2).unwrap(), vec![cycle(5).unwrap(), cycle(5).unwrap()]).unwrap();
    check_eq("k'(P2⊙{C5,C5})", dimensional_k(&corona(&c5).0).unwrap(), 4)?;
    let pet = CoronaSpec::new(path(2).unwrap(), vec![petersen(), petersen()]).unwrap();
    let g = corona(&pet).0;
    check_eq("order", g.order(), 22)?;
    check_eq("k'(P2⊙{Petersen,Petersen})", dimensional_k(&g).unwrap(), 6)?;
    for spec in [&c5, &pet] {
        let v = formulas::girth5_regular_value(spec).value().ok_or("inapplicable")?;
        check_eq("2δ", v, dimensional_k(&corona(spec).0).unwrap())?;
    }
    Ok("C5 → 4, Petersen → 6".into())
}

#[test]
fn acceptance() {
    let mut audit = Audited::default();
    let mut results: Vec<(usize, Duration, Duration, Outcome)> = Vec::new();
    let mut run = |id: usize, limit_secs: u64, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        results.push((id, t.elapsed(), Duration::from_secs(limit_secs), out));
    };
    run(1, 10, &mut criterion_1);
    run(2, 10, &mut criterion_2);
    run(3, 5, &mut criterion_3);
    run(4, 30, &mut criterion_4);
    run(5, 60, &mut || criterion_5(&mut audit));
    run(6, 30, &mut || criterion_6(&mut audit));
    run(7, 300, &mut || criterion_7(&mut audit));
    run(8, 300, &mut || criterion_8(&mut audit));
    run(9, 300, &mut criterion_9);
    run(10, 1, &mut || criterion_10(&audit));
    run(11, 60, &mut criterion_11);

    let mut failed = 0;
    for (id, took, limit, out) in &results {
        let (tag, detail) = match out {
            Ok(d) if took <= limit => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; took {took:.2?} > {limit:?}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2}: {tag} ({took:.2?}) {detail}");
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
