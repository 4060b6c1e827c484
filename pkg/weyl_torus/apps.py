from django.apps import AppConfig


class WeylTorusConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "weyl_torus"
    verbose_name = "Weyl group fixed sets and sectors"
