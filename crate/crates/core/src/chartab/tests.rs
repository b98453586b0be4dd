use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::cyclo::value_field;
use crate::perm::{conjugacy_classes, Group, Permutation};
use crate::RunConfig;

fn group(n: usize, gens: &[&[&[u32]]]) -> Group {
    let gens: Vec<Permutation> = gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect();
    Group::from_generators(&gens, n).unwrap()
}

fn s3() -> Group {
    group(3, &[&[&[0, 1]], &[&[0, 1, 2]]])
}

fn a5() -> Group {
    group(5, &[&[&[0, 1, 2]], &[&[0, 1, 2, 3, 4]]])
}

fn table(g: &Group) -> CharacterTable {
    let t = character_table(g, &RunConfig::default()).unwrap();
    let report = verify_table(&t);
    assert!(report.passed(), "{report:?}");
    t
}

#[test]
fn class_matrices_of_s3() {
    let classes = conjugacy_classes(&s3(), &RunConfig::default()).unwrap();
    let identity = class_matrix(&classes, 0);
    for (j, row) in identity.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            assert_eq!(x, u64::from(j == k));
        }
    }
    let t = (0..3).find(|&k| classes.class(k).element_order == 2).unwrap();
    let m = class_matrix(&classes, t);
    assert_eq!(m[t][0], 3);
    for k in 0..3 {
        assert_eq!((0..3).map(|j| m[j][k]).sum::<u64>(), classes.class(t).size as u64);
    }
    for j in 0..3 {
        let row_total: u64 = (0..3).map(|k| m[j][k] * classes.class(k).size as u64).sum();
        assert_eq!(row_total, classes.class(t).size as u64 * classes.class(j).size as u64);
    }
}

#[test]
fn cyclic_three() {
    let t = table(&group(3, &[&[&[0, 1, 2]]]));
    assert_eq!(t.degrees().unwrap(), vec![1, 1, 1]);
    let z3 = Cyclo::root_of_unity(3, 1);
    let z3b = Cyclo::root_of_unity(3, 2);
    let mut seen: Vec<Cyclo> = t.values.iter().map(|row| row[1].clone()).collect();
    seen.sort();
    let mut expected = vec![Cyclo::one(), z3, z3b];
    expected.sort();
    assert_eq!(seen, expected);
}

#[test]
fn symmetric_three_degrees() {
    assert_eq!(table(&s3()).degrees().unwrap(), vec![1, 1, 2]);
}

#[test]
fn alternating_five() {
    let t = table(&a5());
    assert_eq!(t.degrees().unwrap(), vec![1, 3, 3, 4, 5]);
    let sqrt5 = &(&Cyclo::root_of_unity(5, 1) + &Cyclo::root_of_unity(5, 4)).scale(&BigRational::from_integer(BigInt::from(2)))
        + &Cyclo::one();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let golden = (&Cyclo::one() + &sqrt5).scale(&half);
    let golden_bar = (&Cyclo::one() - &sqrt5).scale(&half);
    assert_eq!(&sqrt5 * &sqrt5, Cyclo::from_i64(5));
    let order5: Vec<usize> = (0..t.num_classes()).filter(|&k| t.classes[k].element_order == 5).collect();
    assert_eq!(order5.len(), 2);
    for &k in &order5 {
        let mut at_k: Vec<Cyclo> = (1..3).map(|i| t.values[i][k].clone()).collect();
        at_k.sort();
        let mut expected = vec![golden.clone(), golden_bar.clone()];
        expected.sort();
        assert_eq!(at_k, expected);
        assert_eq!(value_field(&t.values[1][k]).degree(), 2);
        assert_eq!(t.irr_x(k).unwrap(), vec![0, 1, 2, 3]);
        let norm = (0..5).fold(Cyclo::zero(), |acc, i| &acc + &(&t.values[i][k] * &t.values[i][k].conj()));
        assert_eq!(norm, Cyclo::from_i64(5));
    }
    assert_eq!(t.irr_x(0).unwrap(), vec![0, 1, 2, 3, 4]);
    assert!(t.irr_x(9).is_err());
}

#[test]
fn perturbed_table_fails_column_orthogonality() {
    let mut t = table(&a5());
    let k = t.num_classes() - 1;
    t.values[2][k] = &t.values[2][k] + &Cyclo::one();
    let report = verify_table(&t);
    assert!(!report.passed());
    let verdicts: BTreeMap<String, bool> = report.checks.into_iter().collect();
    assert!(!verdicts["column orthogonality"]);
}

#[test]
fn document_round_trip_is_exact() {
    let t = table(&a5());
    let text = t.to_json();
    let back = CharacterTable::parse(&text).unwrap();
    assert_eq!(back, t);
    assert_eq!(back.to_json(), text);
}

#[test]
fn identical_input_gives_identical_table() {
    assert_eq!(table(&a5()).to_json(), table(&a5()).to_json());
}

#[test]
fn malformed_documents_are_rejected() {
    let mut t = table(&s3());
    t.values[1].pop();
    assert!(CharacterTable::parse(&serde_json::to_string(&t).unwrap()).is_err());
}

#[test]
fn unit_generators_generate() {
    for m in [1u64, 2, 8, 12, 15, 60] {
        let gens = unit_generators(m);
        let mut reached: BTreeSet<u64> = [1 % m].into_iter().collect();
        let mut frontier: Vec<u64> = reached.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                if reached.insert(x * g % m) {
                    frontier.push(x * g % m);
                }
            }
        }
        assert_eq!(reached.len(), units(m).len(), "m = {m}");
    }
}
