from weyl_torus.management.commands._base import VerificationCommand


class Command(VerificationCommand):
    help = "Write every group element with its word and class."
    suites = ("dump",)
