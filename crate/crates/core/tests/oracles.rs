//! Sanity checks on the test oracles against hand-known values.

mod common;

use common::*;
use num_bigint::BigInt;

fn ints(v: &[i64]) -> Poly {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn trace_visits_every_band_twice() {
    let t = trace(&[1, 1, 1]);
    assert_eq!(t.len(), 6);
    assert_eq!(parallel_bands(&[1, 1, 1]), vec![false; 3]);
    assert_eq!(parallel_bands(&[-2, 3, 7]), vec![false, true, true]);
}

#[test]
#[should_panic(expected = "link")]
fn trace_rejects_links() {
    trace(&[2, 2, 3]);
}

#[test]
fn goeritz_known_values() {
    assert_eq!(goeritz_signature(&[1, 1, 1]).abs(), 2);
    assert_eq!(goeritz_signature(&[3]), 0);
    assert_eq!(goeritz_signature(&[-2, 3, 7]).abs(), 8);
    assert_eq!(goeritz_signature(&[1, 1, 1, 1, -3, -3, -3]), 0);
    assert_eq!(goeritz_signature(&[-1, -1, -1]), -goeritz_signature(&[1, 1, 1]));
}

#[test]
fn alexander_known_values() {
    assert_eq!(alexander(&[1, 1, 1]), ints(&[1, -1, 1]));
    assert_eq!(alexander(&[3]), ints(&[1]));
    // figure-eight
    let d = alexander(&[1, -3, -4]);
    assert_eq!(d.len(), 3);
    assert_eq!(eval(&d, -1).magnitude(), &BigInt::from(5).magnitude().clone());
    // P(-2,3,7) is fibered of genus 5
    let d = alexander(&[-2, 3, 7]);
    assert_eq!(d.len(), 11);
    assert!(is_monic(&d));
    // 10_75 has determinant 81
    let d = alexander(&[1, 1, 1, 1, -3, -3, -3]);
    assert_eq!(eval(&d, -1).magnitude(), BigInt::from(81).magnitude());
    assert_eq!(eval(&d, 1).magnitude(), BigInt::from(1).magnitude());
}
