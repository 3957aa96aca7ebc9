"""One-time-pad distinguishing challenge.

Per trial the attacker submits two plaintexts in one encryption request;
the environment pads the shorter with zero bytes, picks one uniformly
with its seeded generator, XOR-encrypts it with fresh keystream bits and
returns the ciphertext.  The attacker then names the plaintext it thinks
was encrypted.  With a truly uniform pad no strategy beats coin flipping;
any keystream bias leaks through the XOR.
"""

from __future__ import annotations

from typing import Optional

from .cost import Budget
from .game import (
    Actor,
    EmitMove,
    GameConfig,
    GameOutcome,
    Halt,
    MachineSpec,
    Move,
    MoveClass,
    frame,
    play,
    unframe,
)
from .toycrypto import KeystreamGen


def _xor(data: bytes, pad: bytes) -> bytes:
    return bytes(a ^ b for a, b in zip(data, pad))


class OtpEnvironment:
    """Answers two-plaintext encryption requests with one XOR ciphertext."""

    def __init__(self, keystream: KeystreamGen):
        self.keystream = keystream
        self._rng = None
        self._last_pick: Optional[int] = None

    def start(self, rng):
        self._rng = rng

    def valuation_tape(self) -> bytes:
        return b"otp-distinguishing"

    def respond(self, move: Move) -> Move:
        if move.kind is MoveClass.ENCRYPTION_REQUEST:
            return self._encrypt(move)
        if move.kind is MoveClass.CHALLENGE:
            return self._judge(move)
        return Move(Actor.ENVIRONMENT, MoveClass.DENIAL, b"unsupported request")

    def _encrypt(self, move: Move) -> Move:
        try:
            plaintexts = unframe(move.payload)
        except ValueError:
            return Move(Actor.ENVIRONMENT, MoveClass.DENIAL, b"malformed framing")
        if len(plaintexts) != 2:
            return Move(Actor.ENVIRONMENT, MoveClass.DENIAL, b"need exactly two plaintexts")
        if any(len(p) == 0 for p in plaintexts):
            return Move(Actor.ENVIRONMENT, MoveClass.DENIAL, b"empty plaintext")
        length = max(len(p) for p in plaintexts)
        padded = [p.ljust(length, b"\x00") for p in plaintexts]
        pick = self._rng.getrandbits(1)
        pad = self.keystream.next_bytes(length)
        self._last_pick = pick
        return Move(Actor.ENVIRONMENT, MoveClass.RESPONSE, frame(_xor(padded[pick], pad)))

    def _judge(self, move: Move) -> Move:
        if self._last_pick is None:
            return Move(Actor.ENVIRONMENT, MoveClass.DENIAL, b"nothing to challenge")
        try:
            guess = int(move.payload.decode("ascii"))
        except (UnicodeDecodeError, ValueError):
            return Move(Actor.ENVIRONMENT, MoveClass.DENIAL, b"malformed guess")
        verdict = b"\x01" if guess == self._last_pick else b"\x00"
        self._last_pick = None
        return Move(Actor.ENVIRONMENT, MoveClass.RESPONSE, verdict)


def monobit_deviation(data: bytes) -> float:
    """Absolute deviation of the ones fraction from one half."""
    nbits = 8 * len(data)
    ones = int.from_bytes(data, "big").bit_count()
    return abs(ones / nbits - 0.5)


class OtpDistinguisher:
    """Two-plaintext monobit strategy.

    Submits an all-zero block and an alternating-bit block (0xAA), so the
    two candidate pads differ in exactly half their bits: XORing the
    ciphertext with the wrong plaintext yields a balanced residual while
    the right one exposes the raw keystream.  The residual with the larger
    monobit deviation is named (ties go to candidate 0).
    """

    def __init__(self, trials: int, plaintext_bytes: int = 32):
        if plaintext_bytes < 1:
            raise ValueError("plaintext_bytes must be at least 1")
        self.trials_wanted = trials
        self.plaintexts = (b"\x00" * plaintext_bytes, b"\xaa" * plaintext_bytes)
        self.spec = MachineSpec(b"monobit-distinguisher:" + str(plaintext_bytes).encode())
        self._sent = 0
        self._awaiting_ciphertext = False

    def step(self, ctx):
        move = ctx.read_next()
        while move is not None and not (
            self._awaiting_ciphertext and move.kind is MoveClass.RESPONSE
        ):
            move = ctx.read_next()

        if self._awaiting_ciphertext:
            if move is None:
                raise RuntimeError("ciphertext response missing")
            self._awaiting_ciphertext = False
            (ciphertext,) = unframe(move.payload)
            guess = self._guess(ciphertext)
            return EmitMove(MoveClass.CHALLENGE, str(guess).encode())

        if self._sent >= self.trials_wanted:
            return Halt()
        self._sent += 1
        self._awaiting_ciphertext = True
        payload = frame(self.plaintexts[0]) + frame(self.plaintexts[1])
        return EmitMove(MoveClass.ENCRYPTION_REQUEST, payload)

    def _guess(self, ciphertext: bytes) -> int:
        devs = [
            monobit_deviation(_xor(ciphertext, p.ljust(len(ciphertext), b"\x00")))
            for p in self.plaintexts
        ]
        return 0 if devs[0] >= devs[1] else 1


def run_otp_challenge(
    keystream: KeystreamGen,
    trials: int,
    rng_seed: int = 0,
    plaintext_bytes: int = 32,
    budget: Optional[Budget] = None,
    win_threshold: float = 0.01,
    per_step_information: Optional[float] = None,
) -> GameOutcome:
    """Play the full distinguishing game; the outcome carries successes."""
    if budget is None:
        budget = Budget.fresh(1e15)
    config = GameConfig(
        budget=budget,
        rng_seed=rng_seed,
        challenge_trials=trials,
        win_threshold=win_threshold,
        per_step_information=per_step_information,
    )
    strategy = OtpDistinguisher(trials, plaintext_bytes)
    return play(strategy, OtpEnvironment(keystream), config)
