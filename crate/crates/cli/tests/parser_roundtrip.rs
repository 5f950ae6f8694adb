use nlfield::NumberField;
use nlfield_cli::expr::{eval, parse};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn literal(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..5) {
        0 => rng.gen_range(0..100).to_string(),
        1 => format!("{}/{}", rng.gen_range(0..20), rng.gen_range(1..9)),
        2 => format!("{}.{}", rng.gen_range(0..10), rng.gen_range(0..100)),
        3 => format!("{}i", rng.gen_range(1..9)),
        _ => "a".into(),
    }
}

fn index(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.5) {
        return literal_real(rng);
    }
    let (x, y) = (index(rng, depth - 1), index(rng, depth - 1));
    match rng.gen_range(0..4) {
        0 => format!("{x} + {y}"),
        1 => format!("{x}-{y}"),
        2 => format!("({x})*({y})"),
        _ => format!("-({x})"),
    }
}

fn literal_real(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..3) {
        0 => rng.gen_range(0..30).to_string(),
        1 => format!("{}/{}", rng.gen_range(1..20), rng.gen_range(1..9)),
        _ => "a".into(),
    }
}

fn expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => format!("z^{{{}}}", index(rng, 2)),
            _ => literal(rng),
        };
    }
    let x = expr(rng, depth - 1);
    let y = expr(rng, depth - 1);
    match rng.gen_range(0..8) {
        0 => format!("{x} + {y}"),
        1 => format!("{x} - {y}"),
        2 => format!("{x}*{y}"),
        3 => format!("({x}) / ({y})"),
        4 => format!("-{x}"),
        5 => format!("({x})^{}", rng.gen_range(0..4)),
        6 => format!("({x})^(-{})", rng.gen_range(1..3)),
        _ => format!("( {x} )"),
    }
}

#[test]
fn printed_trees_reparse_to_equal_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let depth = rng.gen_range(0..5);
        let src = expr(&mut rng, depth);
        let tree = parse(&src).unwrap_or_else(|e| panic!("{src:?}: {e}"));
        let printed = tree.to_string();
        let again = parse(&printed).unwrap_or_else(|e| panic!("{printed:?}: {e}"));
        assert_eq!(tree, again, "{src:?} printed as {printed:?}");
        assert_eq!(printed, again.to_string());
    }
}

#[test]
fn printed_trees_evaluate_identically() {
    let k = NumberField::quadratic(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut evaluated = 0;
    for _ in 0..1000 {
        let src = expr(&mut rng, 3);
        let tree = parse(&src).unwrap();
        let again = parse(&tree.to_string()).unwrap();
        match (eval(&tree, &k), eval(&again, &k)) {
            (Ok(x), Ok(y)) => {
                assert_eq!(x, y, "{src:?}");
                evaluated += 1;
            }
            (Err(x), Err(y)) => assert_eq!(x.to_string(), y.to_string()),
            (x, y) => panic!("{src:?}: {x:?} vs {y:?}"),
        }
    }
    assert!(evaluated > 100, "only {evaluated} expressions evaluated");
}
