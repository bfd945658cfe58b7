fn main() {
    let v = star_core::linalg::smoke(3);
    println!("{v:?}");
}
