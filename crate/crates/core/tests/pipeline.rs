use std::fmt::Write as _;

use rotsys::catalog::{Catalog, CATALOG, CATALOG_FILE};
use rotsys::encode::{CnfInstance, EncodeOptions, Obstructions};
use rotsys::predicates::{crossing_relation, empty_triangles, is_convex, is_drawable, is_hconvex};
use rotsys::solve::{
    self, decode, decoded_crossings, decoded_empty_triangles, parse_dimacs, read_model, solve_clauses, Budget,
    Status,
};

/// Formats a model the way competition solvers print it.
fn competition_output(status: Status, model: Option<&solve::Assignment>) -> String {
    let mut out = String::from("c produced in test\n");
    match status {
        Status::Sat => out.push_str("s SATISFIABLE\n"),
        Status::Unsat => out.push_str("s UNSATISFIABLE\n"),
        Status::Unknown => out.push_str("s UNKNOWN\n"),
    }
    if let Some(m) = model {
        out.push('v');
        for v in 1..m.0.len() {
            let lit = if m.0[v] { v as i64 } else { -(v as i64) };
            write!(out, " {lit}").unwrap();
        }
        out.push_str(" 0\n");
    }
    out
}

#[test]
fn dimacs_round_trip_through_text() {
    let mut inst = CnfInstance::new(6, EncodeOptions::default()).unwrap();
    inst.assert_empty_triangles_atmost(8).unwrap();
    let text = inst.to_dimacs();
    let (vars, clauses) = parse_dimacs(&text).unwrap();
    assert_eq!(vars, inst.num_vars());
    let res = solve_clauses(vars, clauses.iter().map(Vec::as_slice), Budget::unlimited()).unwrap();
    assert_eq!(res.status, Status::Sat);
    let printed = competition_output(res.status, res.model.as_ref());
    let (status, model) = read_model(&printed, vars).unwrap();
    assert_eq!(status, Status::Sat);
    let model = model.unwrap();
    assert!(solve::check_model(&inst, &model));
    let rs = decode(&inst, &model).unwrap();
    assert!(is_drawable(&rs));
    assert_eq!(decoded_crossings(&inst, &model), crossing_relation(&rs).unwrap());
    let mut decoded = decoded_empty_triangles(&inst, &model);
    let mut counted = empty_triangles(&rs).unwrap();
    decoded.sort();
    counted.sort();
    assert_eq!(decoded, counted);
    assert_eq!(counted.len(), 8);
}

#[test]
fn unsat_output_has_no_model() {
    let (status, model) = read_model("s UNSATISFIABLE\n", 10).unwrap();
    assert_eq!(status, Status::Unsat);
    assert!(model.is_none());
}

#[test]
fn bundled_catalog_is_consistent() {
    let parsed = Catalog::parse(CATALOG_FILE).unwrap();
    assert_eq!(&parsed, &*CATALOG);
    let c = &*CATALOG;
    for (name, rs) in c.entries() {
        assert!(rs.is_canonical() || name == "convex_c5" || name == "twisted_t5", "{name}");
    }
    assert!(!is_drawable(&c.pi4_obstruction));
    assert!(!is_drawable(&c.pi5a) && !is_drawable(&c.pi5b));
    for rs in [&c.convex5_1, &c.convex5_2] {
        assert!(is_drawable(rs) && !is_convex(rs).unwrap());
    }
    assert!(is_convex(&c.hconvex6).unwrap() && !is_hconvex(&c.hconvex6).unwrap());
    assert_eq!(crossing_relation(&c.twisted_t5).unwrap().len(), 5);
    assert_eq!(crossing_relation(&c.convex_c5).unwrap().len(), 5);
    assert_eq!(c.twisted_t5.canonical_form(), c.convex5_1.canonical_form());
}

#[test]
fn convexity_classes_grow_as_expected() {
    let count = |n, convex, hconvex| {
        let inst = CnfInstance::new(n, EncodeOptions { convex, hconvex, ..EncodeOptions::default() }).unwrap();
        solve::enumerate_canonical(&inst).unwrap().len()
    };
    assert_eq!(count(5, true, false), 3);
    assert_eq!(count(6, false, false), 102);
    let convex6 = count(6, true, false);
    let hconvex6 = count(6, true, true);
    assert_eq!(convex6, 16);
    assert_eq!(hconvex6, convex6 - 1);
}

#[test]
fn relaxed_obstruction_sets() {
    let count = |n, obstructions| {
        let inst = CnfInstance::new(n, EncodeOptions { obstructions, ..EncodeOptions::default() }).unwrap();
        solve::enumerate_canonical(&inst).unwrap().len()
    };
    assert_eq!(count(4, Obstructions::None), 3);
    assert_eq!(count(4, Obstructions::Pi4Only), 2);
    assert_eq!(count(5, Obstructions::Pi4Only), 7);
}

#[test]
fn external_solver_when_configured() {
    let Ok(solver) = solve::ExternalSolver::from_env() else {
        eprintln!("ROTSYS_SOLVER not set; external solver path not exercised");
        return;
    };
    use rotsys::solve::Backend;
    let mut solver = solver;
    let mut inst = CnfInstance::new(5, EncodeOptions::default()).unwrap();
    inst.forbid_plane_hamiltonian_cycle().unwrap();
    assert_eq!(solver.solve(&inst, Budget::unlimited()).unwrap().status, Status::Unsat);
    let dir = tempfile::tempdir().unwrap();
    let report = solve::unsat_certificate(&inst, dir.path()).unwrap();
    assert!(report.verified, "{}", report.detail);
}
