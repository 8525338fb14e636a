use indexkit::resolution::{
    double_cover_transform, parse_germ, report, resolve, resolve_235, Ordering, ResolutionError, E8_MULTIPLICITIES,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Leading principal minors by exact elimination.
fn principal_minors(m: &[Vec<i64>]) -> Vec<BigRational> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut minors = Vec::new();
    let mut det = BigRational::from_integer(BigInt::from(1));
    for i in 0..n {
        // no pivoting: a zero pivot means a vanishing leading minor
        let p = a[i][i].clone();
        det = &det * &p;
        minors.push(det.clone());
        if p.is_zero() {
            break;
        }
        for r in i + 1..n {
            let f = &a[r][i] / &p;
            for c in i..n {
                let v = &f * &a[i][c];
                a[r][c] -= v;
            }
        }
    }
    minors
}

/// Degree sequence and arm lengths from the unique trivalent vertex.
fn tree_shape(m: &[Vec<i64>]) -> (usize, Vec<usize>) {
    let n = m.len();
    let nbrs = |i: usize| (0..n).filter(|&j| j != i && m[i][j] != 0).collect::<Vec<_>>();
    let edges: usize = (0..n).map(|i| nbrs(i).len()).sum::<usize>() / 2;
    assert_eq!(edges, n - 1, "not a tree");
    let nodes: Vec<usize> = (0..n).filter(|&i| nbrs(i).len() == 3).collect();
    assert_eq!(nodes.len(), 1);
    let node = nodes[0];
    let mut arms: Vec<usize> = nbrs(node)
        .into_iter()
        .map(|start| {
            let (mut prev, mut cur, mut len) = (node, start, 1);
            loop {
                let next: Vec<usize> = nbrs(cur).into_iter().filter(|&j| j != prev).collect();
                match next.as_slice() {
                    [] => return len,
                    [j] => {
                        prev = cur;
                        cur = *j;
                        len += 1;
                    }
                    _ => panic!("second branch point"),
                }
            }
        })
        .collect();
    arms.sort();
    (node, arms)
}

#[test]
fn trace_matches_the_worked_charts() {
    let res = resolve_235().unwrap();
    let charts: Vec<&str> = res
        .trace
        .iter()
        .flat_map(|s| [s.point.as_str(), s.chart_a.as_str(), s.chart_b.as_str()])
        .collect();
    for expected in [
        "z^3(p_1^3+z^2)",
        "p_1^5q_2^3(p_1+q_2^2)",
        "p_1^9q_3^3(p_1q_3^2+1)",
        "p_3^5q_2^9(p_3+q_2)",
        "p_3^{15}q_4^9(q_4+1)",
    ] {
        let want = parse_germ(expected).unwrap();
        assert!(
            charts.iter().any(|c| parse_germ(c).unwrap() == want),
            "{expected} not found in {charts:?}"
        );
    }
}

#[test]
fn recognises_e8() {
    let res = resolve_235().unwrap();
    let mut mults: Vec<u64> = res.graph.cycles().iter().filter(|c| c.compact).filter_map(|c| c.multiplicity).collect();
    mults.sort();
    let mut want = E8_MULTIPLICITIES.to_vec();
    want.sort();
    assert_eq!(mults, want);

    let r = report(&res, &Ordering::Canonical).unwrap();
    let m = &r.matrix;
    assert_eq!(m.len(), 8);
    for i in 0..8 {
        assert_eq!(m[i][i], -2);
        for j in 0..8 {
            assert_eq!(m[i][j], m[j][i]);
            assert!(i == j || m[i][j] == 0 || m[i][j] == 1);
        }
    }
    let minors = principal_minors(m);
    assert_eq!(minors.len(), 8);
    // negative definite: minors alternate in sign, starting negative
    for (i, d) in minors.iter().enumerate() {
        assert!(if i % 2 == 0 { d.is_negative() } else { d.is_positive() }, "minor {i} = {d}");
    }
    assert_eq!(minors[7], BigRational::from_integer(BigInt::from(1)));
    assert_eq!(r.determinant, "1");
    assert_eq!(r.signature, -8);
    assert!(r.negative_definite);

    // the Dynkin tree with arms 1, 2, 4
    let (_, arms) = tree_shape(m);
    assert_eq!(arms, vec![1, 2, 4]);
    let rochlin = r.rochlin.unwrap();
    assert!(!rochlin.divisible_by_16);
    assert!(rochlin.contradiction);
}

#[test]
fn creation_order_gives_the_same_form() {
    let res = resolve_235().unwrap();
    let a = report(&res, &Ordering::Canonical).unwrap();
    let b = report(&res, &Ordering::Creation).unwrap();
    assert_eq!(a.determinant, b.determinant);
    assert_eq!(a.signature, b.signature);
    assert_eq!(tree_shape(&b.matrix).1, vec![1, 2, 4]);
    let mults: Vec<u64> = b.cycles.iter().map(|c| c.mult).collect();
    let traced: Vec<u64> = res.trace.iter().map(|s| s.multiplicity).collect();
    assert_eq!(mults, traced);
}

#[test]
fn downstairs_self_intersections() {
    let res = resolve_235().unwrap();
    for c in res.graph.cycles().iter().filter(|c| c.compact) {
        let want = if c.is_odd() { -4 } else { -1 };
        assert_eq!(c.self_intersection, Some(want), "{}", c.name);
    }
    let up = double_cover_transform(&res.graph).unwrap();
    assert!(up.cycles().iter().filter(|c| c.compact).all(|c| c.self_intersection == Some(-2)));
}

#[test]
fn cusp_smoke() {
    let res = resolve(&parse_germ("y^2 + z^3").unwrap()).unwrap();
    let r = report(&res, &Ordering::Canonical).unwrap();
    assert_eq!(r.cycles.len(), 3);
    assert!(!r.cover_applied);
    assert!(r.cover_error.is_some());
    assert!(r.negative_definite);
    assert!(r.rochlin.is_none());
    let minors = principal_minors(&r.matrix);
    assert_eq!(r.determinant, minors.last().unwrap().to_integer().to_string());
}

#[test]
fn parser_examples() {
    let g = parse_germ("y^3+z^5").unwrap();
    assert_eq!(g.vars, ["y".to_string(), "z".to_string()]);
    assert_eq!(g.to_string(), "y^3+z^5");
    assert_eq!(parse_germ("z^5 + y^3").unwrap(), g);
    assert_eq!(parse_germ("p_1^{5}q_2^3(p_1+q_2^2)").unwrap().to_string(), "p_1^5q_2^3(p_1+q_2^2)");
    assert_eq!(parse_germ("x*y - x y").map(|_| ()), Err(parse_germ("0").unwrap_err()));
    assert!(matches!(parse_germ("x+y+z"), Err(ResolutionError::Arity { .. })));
    assert!(matches!(parse_germ("y^"), Err(ResolutionError::Parse { .. })));
    assert!(matches!(parse_germ("y^3+(z"), Err(ResolutionError::Parse { .. })));
}
