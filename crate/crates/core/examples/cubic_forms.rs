//! Binary cubic forms under the twisted GL(2) action: discriminant,
//! pairing, Hessian, orbit types, reduction and stabilizers.
//!
//! `cargo run --example cubic_forms -- "1,0,-1,-1" "2,1;1,1"`

use num_traits::Zero;
use g2_cubic::forms::{self, act, discriminant, hessian, iota, pairing, BinaryCubicForm, GL2Elt};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let f: BinaryCubicForm = args.next().as_deref().unwrap_or("1,0,-1,-1").parse()?;
    let l: GL2Elt = args.next().as_deref().unwrap_or("2,1;1,1").parse()?;

    let g = act(&f, &l);
    println!("f = {f}   P(f) = {}   orbit {:?}", discriminant(&f), forms::classify_orbit(&f));
    println!("l = {l}   det = {}", l.det());
    println!("f.l = {g}   P(f.l) = {}  (det^-2 P(f) = {})", discriminant(&g), discriminant(&f) / (l.det() * l.det()));

    let y: BinaryCubicForm = "0,1,1,0".parse()?;
    println!("[f, y] = {}   [f.l, y.l^iota] = {}", pairing(&f, &y), pairing(&g, &act(&y, &iota(&l))));
    println!("disc H_f = {}   -3 P(f) = {}", hessian(&f).disc(), -discriminant(&f) * forms::Q::from_integer(3.into()));

    if f.is_integral() && !discriminant(&f).is_zero() {
        let (r, m) = forms::reduce(&f)?;
        println!("reduced {r} via {m}");
        let stab = forms::stabilizer(&f)?;
        println!("stabilizer order {}", stab.len());
        for s in stab {
            println!("  {s}");
        }
    }
    for w in ["0,0,0,5", "0,0,1,2", "1,0,-1,-1", "1,0,0,1", "0,1,1,0"] {
        let w: BinaryCubicForm = w.parse()?;
        println!("{w:>12} -> {:?}", forms::classify_orbit(&w));
    }
    Ok(())
}
