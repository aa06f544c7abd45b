# Конфигурация верификатора
