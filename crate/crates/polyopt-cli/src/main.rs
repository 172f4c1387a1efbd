fn main() {
    println!("polyopt");
}
