from weyl_torus.management.commands._base import VerificationCommand


class Command(VerificationCommand):
    help = "K-theory ranks of both forms and their per-class comparison."
    suites = ("ktheory",)
