mod common;

use common::{cfg, groups};
use subnorm::conjecture::{check_in_context, mckay_counts, Level, TableContext};

#[test]
fn verdicts_refine_and_ignore_the_sign_convention() {
    let (mut checked, mut held) = (0, 0);
    for (name, g) in groups() {
        let ctx = TableContext::new(&g, &cfg()).unwrap();
        for p in g.order_primes() {
            for k in ctx.classes().p_element_classes(p) {
                let x = ctx.classes().class(k).representative.clone();
                let plus = check_in_context(&ctx, &name, p, &x, Level::Plus, &cfg()).unwrap();
                let basic = check_in_context(&ctx, &name, p, &x, Level::Basic, &cfg()).unwrap();
                assert!(!plus.verdict || basic.verdict, "{name}, p = {p}, class {k}");
                assert_eq!(plus.basic_verdict, basic.verdict, "{name}, p = {p}, class {k}");
                assert_eq!(plus.verdict, plus.verdict_flipped_convention, "{name}, p = {p}, class {k}");
                assert_eq!(basic.verdict, basic.verdict_flipped_convention, "{name}, p = {p}, class {k}");
                assert_eq!(plus.tags_group.len(), ctx.table().irr_x(k).unwrap().len());
                checked += 1;
                held += plus.verdict as usize;
            }
        }
    }
    println!("refined comparison holds on {held} of {checked} classes");
    assert!(checked > 100);
}

#[test]
fn mckay_counts_agree_on_the_corpus() {
    for (name, g) in groups() {
        let ctx = TableContext::new(&g, &cfg()).unwrap();
        for p in g.order_primes() {
            let (a, b) = mckay_counts(&ctx, p, &cfg()).unwrap();
            assert_eq!(a, b, "{name}, p = {p}");
        }
    }
}
