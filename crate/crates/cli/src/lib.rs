//! Command dispatch for the elliptic-summer binary.

pub fn run() -> i32 {
    eprintln!("not yet wired");
    1
}
