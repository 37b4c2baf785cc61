"""Seeded 64-bit multiplicative congruential generator for coefficient draws."""

MULTIPLIER = 0xF1357AEA2E62A9C5
MASK64 = (1 << 64) - 1


class MCG64:
    """``state <- state * a mod 2**64`` on odd states; outputs the high 32 bits."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.state = ((self.seed << 1) | 1) & MASK64
        for _ in range(4):
            self.next32()

    def next32(self) -> int:
        self.state = (self.state * MULTIPLIER) & MASK64
        return self.state >> 32

    def below(self, n: int) -> int:
        return self.next32() % n

    def coefficient(self, characteristic: int) -> int:
        """Nonzero field element: uniform in F_p^*, or in 1..100 for Q."""
        if characteristic:
            return 1 + self.below(characteristic - 1)
        return 1 + self.below(100)
