use cylrsk_core::dual_rsk::{column_insert, pair_lemma_violations, three_insertion_violations};
use cylrsk_core::Tableau;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tableau(rng: &mut ChaCha8Rng, max_letter: i64) -> Tableau {
    let mut p = Tableau::empty(0);
    for _ in 0..rng.random_range(0..25) {
        p = column_insert(&p, rng.random_range(1..=max_letter)).unwrap().0;
    }
    p
}

#[test]
fn column_bumping_lemma_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut violations = Vec::new();
    for _ in 0..10_000 {
        let max_letter = rng.random_range(2..=6);
        let p = random_tableau(&mut rng, max_letter);
        let (x, y) = (rng.random_range(1..=max_letter), rng.random_range(1..=max_letter));
        let (p1, r) = column_insert(&p, x).unwrap();
        let (_, r2) = column_insert(&p1, y).unwrap();
        violations.extend(pair_lemma_violations(x, &r, y, &r2));
    }
    assert!(
        violations.is_empty(),
        "{} violations, first: {}",
        violations.len(),
        violations[0]
    );
}

/// For `a1 < b < a2` inserted as `a1, a2, b`, the relations between the
/// second and third insertions always hold.
#[test]
fn three_insertion_second_pair_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut outside_b2 = Vec::new();
    let mut outside_b1 = 0;
    for _ in 0..10_000 {
        let max_letter = rng.random_range(3..=7);
        let p = random_tableau(&mut rng, max_letter);
        let a1 = rng.random_range(1..=max_letter - 2);
        let b = rng.random_range(a1 + 1..max_letter);
        let a2 = rng.random_range(b + 1..=max_letter);
        let (p1, r1) = column_insert(&p, a1).unwrap();
        let (p2, r2) = column_insert(&p1, a2).unwrap();
        let (_, r3) = column_insert(&p2, b).unwrap();
        for v in three_insertion_violations((a1, &r1), (a2, &r2), (b, &r3)) {
            if v.contains(&format!("of {a2}")) {
                outside_b2.push(v);
            } else {
                outside_b1 += 1;
            }
        }
    }
    assert!(
        outside_b2.is_empty(),
        "{} violations, first: {}",
        outside_b2.len(),
        outside_b2[0]
    );
    assert!(outside_b1 > 0);
}

/// The relations against the first insertion do not hold in general.
#[test]
fn three_insertion_first_pair_counterexample() {
    let p = Tableau::new(vec![vec![1, 1, 1], vec![2, 3, 3], vec![3]]).unwrap();
    let (p1, r1) = column_insert(&p, 1).unwrap();
    let (p2, r2) = column_insert(&p1, 3).unwrap();
    let (_, r3) = column_insert(&p2, 2).unwrap();
    assert_eq!((r1.new_box, r2.new_box, r3.new_box), ((1, 4), (2, 4), (1, 5)));
    assert_eq!(r1.cells, vec![(1, 1), (1, 2), (1, 3), (1, 4)]);
    assert_eq!(r3.cells, vec![(2, 1), (2, 2), (2, 3), (2, 4), (1, 5)]);
    let v = three_insertion_violations((1, &r1), (3, &r2), (2, &r3));
    assert_eq!(v, vec!["new box of 2 is not southwest of that of 1".to_string()]);

    // the route relation against the first insertion fails too
    let p = Tableau::new(vec![vec![3]]).unwrap();
    let (p1, r1) = column_insert(&p, 1).unwrap();
    let (p2, r2) = column_insert(&p1, 3).unwrap();
    let (_, r3) = column_insert(&p2, 2).unwrap();
    assert_eq!(r1.cells, vec![(1, 1), (1, 2)]);
    assert_eq!(r3.cells, vec![(2, 1), (1, 2), (1, 3)]);
    let v = three_insertion_violations((1, &r1), (3, &r2), (2, &r3));
    assert_eq!(v.len(), 2);
    assert!(v[0].starts_with("path of 2 is not strictly below"));
}
