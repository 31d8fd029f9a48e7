use setgrading::liealg::{sigma, tau, AlgebraBasis, OrthoElement, Scalar};
use setgrading::rootsys::{inner, is_root, RootSystemD};

fn all_brackets(basis: &AlgebraBasis) -> Vec<Vec<OrthoElement>> {
    let e = basis.elements();
    e.iter().map(|x| e.iter().map(|y| x.bracket(y).unwrap()).collect()).collect()
}

#[test]
fn antisymmetry_and_jacobi_on_basis_triples() {
    for n in 2..=4 {
        let basis = AlgebraBasis::new(n).unwrap();
        let e = basis.elements();
        let br = all_brackets(&basis);
        let zero = OrthoElement::zero(n);
        for (i, row) in br.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x.add(&br[j][i]), zero, "antisymmetry n={} ({}, {})", n, i, j);
                assert!(x.is_orthogonal());
            }
        }
        for i in 0..e.len() {
            for j in 0..e.len() {
                for k in 0..e.len() {
                    let a = e[i].bracket(&br[j][k]).unwrap();
                    let b = e[j].bracket(&br[k][i]).unwrap();
                    let c = e[k].bracket(&br[i][j]).unwrap();
                    assert!(a.add(&b).add(&c).is_zero(), "jacobi n={} ({}, {}, {})", n, i, j, k);
                }
            }
        }
    }
}

#[test]
fn involutions_commute() {
    for n in 2..=6 {
        let basis = AlgebraBasis::new(n).unwrap();
        for x in basis.elements() {
            assert_eq!(&sigma(&sigma(x)), x);
            assert_eq!(&tau(&tau(x)), x);
            assert_eq!(sigma(&tau(x)), tau(&sigma(x)));
        }
    }
}

#[test]
fn root_space_covariance() {
    for n in 2..=5 {
        let basis = AlgebraBasis::new(n).unwrap();
        let rs = RootSystemD::new(n).unwrap();
        let roots: Vec<_> = rs.positive_roots().iter().flat_map(|r| [r.clone(), r.neg()]).collect();
        for a in &roots {
            let xa = basis.root_vector(a);
            for (k, h) in basis.cartan().iter().enumerate() {
                let expected = xa.scale(Scalar::from_integer(a.coords()[k]));
                assert_eq!(h.bracket(xa).unwrap(), expected);
            }
            for b in &roots {
                let sum: Vec<i64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect();
                let br = xa.bracket(basis.root_vector(b)).unwrap();
                if sum.iter().all(|&x| x == 0) {
                    let c = basis.coords(&br).unwrap();
                    assert!(!c.is_empty() && c.keys().all(|&k| k < n), "[x_a, x_-a] in the Cartan for {}", a);
                } else if is_root(&sum) {
                    let c = basis.coords(&br).unwrap();
                    let target = rs.locate(&sum).unwrap();
                    let idx = n + 2 * target.0 + usize::from(target.1);
                    assert_eq!(c.len(), 1, "[x_{}, x_{}]", a, b);
                    assert!(c.contains_key(&idx));
                    assert_eq!(inner(a.coords(), b.coords()).unwrap(), -1);
                } else {
                    assert!(br.is_zero(), "[x_{}, x_{}] should vanish", a, b);
                }
            }
        }
    }
}

#[test]
fn root_inner_products() {
    for n in 2..=6 {
        let rs = RootSystemD::new(n).unwrap();
        let roots: Vec<_> = rs.positive_roots().iter().flat_map(|r| [r.clone(), r.neg()]).collect();
        for a in &roots {
            assert!(rs.simple_coordinates(a.coords()).is_some());
            for b in &roots {
                if a == b || *a == b.neg() {
                    continue;
                }
                let ip = inner(a.coords(), b.coords()).unwrap();
                assert!((-1..=1).contains(&ip));
                let sum: Vec<i64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect();
                let diff: Vec<i64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x - y).collect();
                assert_eq!(is_root(&sum), ip == -1);
                assert_eq!(is_root(&diff), ip == 1);
            }
        }
        let q = rs.root_lattice();
        for v in [[1i64, 0], [1, 1], [2, 0], [3, 1], [0, -1]] {
            let mut w = vec![0; n];
            w[0] = v[0];
            w[n - 1] += v[1];
            assert_eq!(q.contains_i64(&w).unwrap(), w.iter().sum::<i64>() % 2 == 0);
        }
    }
}
