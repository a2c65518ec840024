//! The solver is generic over the cost scalar; narrower and wider integer
//! types must agree with the default `i64` alias.

use mivs_core::io::{generate_instance, parse_bid_csv, write_bid_csv, GeneratorParams};
use mivs_core::model::Instance;
use mivs_core::solver::solve_exhaustive;
use mivs_core::{Error, SolverOptions};

#[test]
fn u32_i64_i128_agree() {
    for seed in 0..10 {
        let params = GeneratorParams::new(15, 6, seed).with_density(0.7);
        let a: Instance<i64> = generate_instance(&params).unwrap();
        let b: Instance<u32> = generate_instance(&params).unwrap();
        let c: Instance<i128> = parse_bid_csv(&write_bid_csv(&a)).unwrap();
        let ra = solve_exhaustive(&a, &SolverOptions::default()).unwrap();
        let rb = solve_exhaustive(&b, &SolverOptions::default()).unwrap();
        let rc = solve_exhaustive(&c, &SolverOptions::default()).unwrap();
        assert_eq!(ra.best_id, rb.best_id);
        assert_eq!(ra.best_id, rc.best_id);
        assert_eq!(ra.best.total_cost() as i128, rb.best.total_cost() as i128);
        assert_eq!(ra.best.total_cost() as i128, rc.best.total_cost());
    }
}

#[test]
fn narrow_type_reports_overflow_at_load() {
    let text = "item,S1,S2\nA,400,300\nB,250,10\nFIXED_COST,0,0\n";
    assert_eq!(parse_bid_csv::<u16>(text).unwrap_err(), Error::AmountOverflow);
    assert!(parse_bid_csv::<u32>(text).is_ok());
}
