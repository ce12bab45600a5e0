use ycluster::family::{Family, FamilyKind};
use ycluster::seed_engine::{random_initial_values, run, run_family, MutationSchedule, Seed};
use ycluster::ysystem_verify::{
    check_periodicity, check_y_relations, derive_t_relations, derive_y_relations, involution_report,
    quiver_period_report, t_relations, tropical_report, y_relations,
};

fn grid() -> Vec<Family> {
    let mut out = Vec::new();
    for kind in [FamilyKind::Sg, FamilyKind::Rsg] {
        for m in 1..=3 {
            for n in 4..=10 {
                out.push(Family::new(kind, m, n).unwrap());
            }
        }
    }
    out
}

#[test]
fn quiver_returns_after_one_schedule_period() {
    for f in grid() {
        let rep = quiver_period_report(&f).unwrap();
        assert!(rep.pass, "{f}: {:?}", rep.witnesses);
    }
}

#[test]
fn mutation_is_an_involution_along_the_schedule() {
    for f in grid() {
        let rep = involution_report(&f).unwrap();
        assert!(rep.pass, "{f}: {:?}", rep.witnesses);
    }
}

#[test]
fn exchange_factors_reproduce_the_y_system() {
    for f in grid() {
        let traj = run_family(&f, |q| Ok(Seed::tropical(q)), 3 * f.schedule_period()).unwrap();
        let templates = y_relations(&f);
        let derived = derive_y_relations(&traj).unwrap();
        assert!(!derived.is_empty());
        for (c, rel) in derived {
            assert_eq!(rel, templates[rel.layer - 1], "{f} layer {} centre {c}", rel.layer);
        }
    }
}

#[test]
fn exchange_monomials_reproduce_the_t_system() {
    for f in grid() {
        let traj = run_family(&f, |q| Ok(Seed::tropical(q)), 3 * f.schedule_period()).unwrap();
        let templates = t_relations(&f);
        let derived = derive_t_relations(&traj).unwrap();
        assert!(!derived.is_empty());
        for (c, rel) in derived {
            assert_eq!(rel, templates[rel.layer - 1], "{f} layer {} centre {c}", rel.layer);
        }
    }
}

#[test]
fn tropical_census_on_grid() {
    for f in grid() {
        let rep = tropical_report(&f).unwrap();
        assert!(rep.pass, "{f}: {:?}", rep.witnesses);
    }
}

#[test]
fn numeric_y_relations_and_periodicity() {
    for f in [
        Family::sg(1, 4).unwrap(),
        Family::sg(2, 5).unwrap(),
        Family::rsg(1, 6).unwrap(),
        Family::rsg(3, 4).unwrap(),
    ] {
        let q = ycluster::build_quiver(&f);
        let seed = Seed::numeric(q.clone(), &random_initial_values(q.len(), 11)).unwrap();
        let len = (f.full_period() + f.schedule_period() as i64 + f.max_d()) as usize;
        let traj = run(&seed, &MutationSchedule::for_family(&f), len).unwrap();
        let rep = check_y_relations(&traj).unwrap();
        assert!(rep.pass, "{f}: {:?}", rep.witnesses);
        let rep = check_periodicity(&traj).unwrap();
        assert!(rep.pass, "{f}: {:?}", rep.witnesses);
    }
}
