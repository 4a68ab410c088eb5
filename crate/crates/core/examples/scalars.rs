//! Exact arithmetic in Q and Q(i), and the machine-word fast path.

use finrank::{FastScalar, Field, Scalar};

fn main() -> finrank::Result<()> {
    let a = Scalar::parse("3/4", Field::Q)?;
    let b = Scalar::parse("-2/6", Field::Q)?;
    println!("{a} + {b} = {}", &a + &b);
    println!("{a} * {b} = {}", &a * &b);
    println!("{a} / {b} = {}", a.try_div(&b)?);

    let z = Scalar::parse("1+2i", Field::Qi)?;
    let w = Scalar::parse("1/2-i", Field::Qi)?;
    println!("({z})({w}) = {}", &z * &w);
    println!("1/({z}) = {}", z.inverse()?);
    println!("conj({z})^3 = {}", z.conj().pow(3)?);

    // equal values share a key however they were written
    let half = Scalar::parse("4/8", Field::Q)?;
    assert_eq!(half.canonical_key(), Scalar::ratio(Field::Q, 1, 2)?.canonical_key());

    let x = FastScalar::from_scalar(&a).expect("small value");
    let y = FastScalar::new(5, 0, 6).expect("nonzero denominator");
    println!("fast: {:?} + {:?} = {:?}", x.parts(), y.parts(), x.checked_add(y).map(FastScalar::parts));
    let huge = FastScalar::from_int(i64::MAX);
    println!("i64::MAX squared overflows: {}", huge.checked_mul(huge).is_none());
    Ok(())
}
